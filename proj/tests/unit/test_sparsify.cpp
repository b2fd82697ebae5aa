#include <doctest.h>

#include <cmath>
#include <limits>

#include "../support/oracles.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/generators.hpp"
#include "specgraph/resistance.hpp"
#include "specgraph/sparsify.hpp"

using namespace specgraph;

namespace {

double total_weight(const Graph& g) { return g.volume() / 2.0; }

}  // namespace

TEST_SUITE("sparsify") {
  TEST_CASE("sample size") {
    CHECK(sample_size(100, 0.5) == static_cast<std::size_t>(std::ceil(20.0 * 100 * std::log(100.0) / 0.25)));
    CHECK(sample_size(2, 1.0, 0.01) >= 1);
    CHECK_THROWS_AS(sample_size(10, 0.0), ValidationError);
  }

  TEST_CASE("probabilities") {
    const Graph tree = binary_tree_graph(15);
    for (double p : sampling_probabilities(tree, {})) CHECK(p == doctest::Approx(1.0 / 14.0));
    const Graph g = gen_gnp(20, 0.3, 1);
    const std::size_t m = g.num_edges();
    SparsifierConfig zero;
    zero.probabilities = std::vector<double>(m, 1.0 / static_cast<double>(m - 1));
    zero.probabilities->back() = 0.0;
    CHECK_THROWS_AS(sampling_probabilities(g, zero), ValidationError);
    SparsifierConfig uniform;
    uniform.beta = 0.3;
    uniform.probabilities = std::vector<double>(m, 1.0 / static_cast<double>(m));
    CHECK(sampling_probabilities(g, uniform).size() == m);
    // A dumbbell bridge needs at least beta / (n - 1).
    const Graph d = dumbbell_graph(5);
    SparsifierConfig strict;
    strict.beta = 1.0;
    strict.probabilities = std::vector<double>(d.num_edges(), 1.0 / static_cast<double>(d.num_edges()));
    CHECK_THROWS_AS(sampling_probabilities(d, strict), ValidationError);
  }

  TEST_CASE("sampled graph is a valid reweighted subgraph") {
    const Graph g = gen_gnp(40, 0.25, 3);
    SparsifierConfig cfg;
    cfg.samples = 300;
    cfg.seed = 4;
    const Graph h = sparsify(g, cfg);
    CHECK(h.num_vertices() == g.num_vertices());
    CHECK(h.num_edges() <= std::min<std::size_t>(300, g.num_edges()));
    for (const Edge& e : h.edges()) CHECK(g.weight(e.u, e.v) > 0.0);
    const Matrix l = laplacian(h);
    CHECK((l - l.transpose()).norm() == 0.0);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
    const auto counts = sample_counts(sampling_probabilities(g, cfg), 300, 4);
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    CHECK(total == 300);
    CHECK(sparsify(g, cfg) == h);
  }

  TEST_CASE("tree sampling keeps every edge at its weight in expectation") {
    const Graph tree = binary_tree_graph(20);
    SparsifierConfig cfg;
    cfg.samples = 10 * 19 * 4;
    cfg.seed = 2;
    const Graph h = sparsify(tree, cfg);
    CHECK(h.num_edges() == 19);
    double mean = 0.0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
      cfg.seed = s;
      mean += sparsify(tree, cfg).weight(0, 1) / 100.0;
    }
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("total weight and quadratic form are unbiased") {
    const Graph g = gen_gnp(60, 0.2, 7);
    const Vector x = Vector::LinSpaced(60, -1, 1).array().sin();
    const double quad = x.dot(laplacian(g) * x);
    SparsifierConfig cfg;
    cfg.samples = 1000;
    double weight = 0.0, form = 0.0;
    for (std::uint64_t s = 1; s <= 200; ++s) {
      cfg.seed = s;
      const Graph h = sparsify(g, cfg);
      if (s <= 100) weight += total_weight(h) / 100.0;
      form += x.dot(h.apply_laplacian(x)) / 200.0;
    }
    CHECK(weight == doctest::Approx(total_weight(g)).epsilon(0.02));
    CHECK(form == doctest::Approx(quad).epsilon(0.02));
  }

  TEST_CASE("similarity closed forms") {
    const Graph g = gen_gnp(30, 0.3, 2);
    CHECK(spectral_similarity(g, g).sigma == doctest::Approx(1.0));
    const SimilarityReport twice = spectral_similarity(g, g.scaled(2.0));
    CHECK(twice.sigma == doctest::Approx(2.0));
    CHECK(twice.min_quadratic_ratio == doctest::Approx(0.5));
    const SimilarityReport pc = spectral_similarity(path_graph(16), cycle_graph(16));
    CHECK(pc.sigma >= 4.0);
    CHECK(pc.quadratic_checks == kQuadraticChecks);
    CHECK(pc.min_quadratic_ratio >= 1.0 / pc.sigma - 1e-12);
    CHECK(pc.max_quadratic_ratio <= pc.sigma + 1e-12);
    CHECK(spectral_similarity(path_graph(4), Graph(4, {{0, 1, 1}, {2, 3, 1}})).sigma ==
          std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(spectral_similarity(path_graph(4), path_graph(5)), ValidationError);
  }

  TEST_CASE("similarity agrees with the pencil oracle") {
    const Graph g = gen_gnp(25, 0.4, 3);
    SparsifierConfig cfg;
    cfg.samples = 800;
    cfg.seed = 3;
    const Graph h = sparsify(g, cfg);
    REQUIRE(is_connected(h));
    // Eigenvalues of Lh^{+1/2} Lg Lh^{+1/2} on 1-perp.
    const auto eh = oracle::eigensystem(oracle::comb_laplacian(h));
    Matrix half = Matrix::Zero(25, 25);
    for (int i = 1; i < 25; ++i) {
      half += eh.eigenvectors().col(i) * eh.eigenvectors().col(i).transpose() / std::sqrt(eh.eigenvalues()[i]);
    }
    const Vector ev = oracle::eigenvalues(half * oracle::comb_laplacian(g) * half);
    const double sigma = std::max(ev[24], 1.0 / ev[1]);
    CHECK(spectral_similarity(g, h).sigma == doctest::Approx(sigma).epsilon(1e-8));
  }

  TEST_CASE("heavy sampling of a complete graph is nearly exact") {
    SparsifierConfig cfg;
    cfg.samples = 1'000'000;
    cfg.seed = 5;
    const Graph k8 = complete_graph(8);
    CHECK(spectral_similarity(k8, sparsify(k8, cfg)).sigma <= 1.05);
  }

  TEST_CASE("leverage sampling at the default size") {
    int good = 0;
    const Graph g = gen_gnp(40, 0.3, 6);
    SparsifierConfig cfg;
    cfg.samples = sample_size(40, 1.0);
    for (std::uint64_t s = 1; s <= 10; ++s) {
      cfg.seed = s;
      if (spectral_similarity(g, sparsify(g, cfg)).sigma <= 1.5) ++good;
    }
    CHECK(good >= 9);
  }

  TEST_CASE("subspace embedding") {
    const Graph g = gen_gnp(50, 0.3, 8);
    SparsifierConfig cfg;
    cfg.samples = sample_size(50, 0.5);
    int good = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) {
      cfg.seed = s;
      if (embedding_check(g, cfg) <= 0.5) ++good;
    }
    CHECK(good >= 9);
  }

  TEST_CASE("uniform sampling misses the bridge") {
    const Graph d = dumbbell_graph(6);
    SparsifierConfig lev;
    lev.samples = 60;
    SparsifierConfig uni = lev;
    uni.beta = 0.3;
    uni.probabilities = std::vector<double>(d.num_edges(), 1.0 / static_cast<double>(d.num_edges()));
    double lev_norm = 0.0, uni_norm = 0.0;
    for (std::uint64_t s = 1; s <= 30; ++s) {
      lev.seed = uni.seed = s;
      lev_norm += embedding_check(d, lev);
      uni_norm += embedding_check(d, uni);
    }
    CHECK(uni_norm > lev_norm);
  }
}
