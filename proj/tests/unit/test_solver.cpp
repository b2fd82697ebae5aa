#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/generators.hpp"
#include "specgraph/solver.hpp"
#include "specgraph/sparsify.hpp"

using namespace specgraph;

namespace {

Vector centered_rhs(Eigen::Index n, double phase) {
  Vector b = (Vector::LinSpaced(n, 0, 7).array() + phase).cos();
  return b.array() - b.mean();
}

LabelSet two_labels(std::size_t n, Vertex a, Vertex b) { return make_labels(n, {{a, 0}, {b, 1}}, 2); }

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("dense solve") {
    const Graph g = gen_gnp(30, 0.2, 3);
    CHECK(solve_dense(g, Vector::Zero(30)).x.isZero());
    const SolveReport k2 = solve_dense(complete_graph(2), Vector{{1, -1}});
    CHECK(k2.x[0] == doctest::Approx(0.5));
    CHECK(k2.x[1] == doctest::Approx(-0.5));
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const Graph h = gen_gnp(40, 0.2, s);
      if (!is_connected(h)) continue;
      Vector b = Vector::LinSpaced(40, 0, 1);
      const SolveReport r = solve_dense(h, b);
      b.array() -= b.mean();
      CHECK((h.apply_laplacian(r.x) - b).norm() <= 1e-8);
      CHECK(std::abs(r.x.sum()) <= 1e-8);
      CHECK(r.projection_removed == doctest::Approx(0.5));
      CHECK(r.rel_error_L <= 1e-10);
    }
    CHECK_THROWS_AS(solve_dense(Graph(4, {{0, 1, 1}, {2, 3, 1}}), Vector::Zero(4)), DisconnectedGraph);
  }

  TEST_CASE("cg terminates within n iterations") {
    for (const Graph& g : {path_graph(20), gen_gnp(32, 0.3, 2), grid2d_graph(4, 8)}) {
      const auto n = static_cast<int>(g.num_vertices());
      CgOptions opts;
      opts.eps = 1e-14;
      opts.max_iter = n;
      const SolveReport r = solve_cg(g, centered_rhs(n, 0.3), opts);
      CHECK(r.iterations <= n);
      CHECK(r.rel_error_L <= 1e-6);
      CHECK(std::abs(r.x.sum()) <= 1e-8);
    }
  }

  TEST_CASE("cg error decreases monotonically") {
    for (const Graph& g : {dumbbell_graph(8), gen_gnp(64, 0.1, 9), cycle_graph(40)}) {
      if (!is_connected(g)) continue;
      CgOptions opts;
      opts.track_history = true;
      const SolveReport r = solve_cg(g, centered_rhs(static_cast<Eigen::Index>(g.num_vertices()), 1.0), opts);
      CHECK(r.converged);
      CHECK(r.rel_error_L <= opts.eps);
      REQUIRE(r.error_history.size() == static_cast<std::size_t>(r.iterations));
      for (std::size_t i = 1; i < r.error_history.size(); ++i) {
        CHECK(r.error_history[i] <= r.error_history[i - 1] * (1.0 + 1e-9));
      }
    }
  }

  TEST_CASE("cg conditioning and spectral right-hand sides") {
    const SolveReport bell = solve_cg(dumbbell_graph(8), centered_rhs(16, 0.1));
    const SolveReport clique = solve_cg(complete_graph(16), centered_rhs(16, 0.1));
    CHECK(bell.iterations > clique.iterations);

    const Graph g = gen_gnp(30, 0.3, 4);
    const auto es = oracle::eigensystem(oracle::comb_laplacian(g));
    const SolveReport one = solve_cg(g, 3.0 * es.eigenvectors().col(1));
    CHECK(one.iterations <= 2);
    CHECK(one.rel_error_L <= 1e-8);
  }

  TEST_CASE("cg reports non-convergence") {
    CgOptions opts;
    opts.max_iter = 2;
    const SolveReport r = solve_cg(path_graph(40), centered_rhs(40, 0.0), opts);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 2);
  }

  TEST_CASE("pcg with an exact preconditioner") {
    const Graph g = gen_gnp(50, 0.15, 6);
    const Vector b = centered_rhs(50, 2.0);
    const SolveReport r = solve_pcg(g, b, g);
    CHECK(r.iterations <= 2);
    CHECK((r.x - solve_dense(g, b).x).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK_THROWS_AS(solve_pcg(g, b, Graph(50, {{0, 1, 1}})), DisconnectedGraph);
  }

  TEST_CASE("pcg with a sparsifier beats plain cg") {
    int wins = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const Graph g = gen_gnp(100, 0.1, 100 + s);
      if (!is_connected(g)) continue;
      SparsifierConfig cfg;
      cfg.samples = sample_size(100, 1.0);
      cfg.seed = s;
      const Graph h = sparsify(g, cfg);
      if (!is_connected(h)) continue;
      const Vector b = centered_rhs(100, static_cast<double>(s));
      const SolveReport plain = solve_cg(g, b);
      const SolveReport pre = solve_pcg(g, b, h);
      CHECK(pre.rel_error_L <= 1e-8);
      if (2 * pre.iterations <= plain.iterations) ++wins;
    }
    CHECK(wins >= 8);
  }

  TEST_CASE("labels") {
    const LabelSet l = make_labels(5, {{0, 0}, {4, 1}}, 2);
    CHECK(l.num_labeled() == 2);
    CHECK(class_signs(l, 0) == Vector{{1, 0, 0, 0, -1}});
    CHECK_THROWS_AS(make_labels(5, {{0, 0}}, 2), ValidationError);
    CHECK_THROWS_AS(make_labels(5, {{7, 0}}, 1), ValidationError);
    CHECK_THROWS_AS(make_labels(5, {{0, 3}}, 2), ValidationError);
  }

  TEST_CASE("joachims") {
    std::vector<std::pair<Vertex, int>> all;
    for (Vertex v = 0; v < 10; ++v) all.push_back({v, 0});
    const LabelSet every = make_labels(10, all, 1);
    const Vector y = ssl_joachims(gen_gnp(10, 0.5, 1), every, 0);
    CHECK(y.minCoeff() > 0.0);
    CHECK(y.maxCoeff() - y.minCoeff() < 1e-12);

    const Graph d = dumbbell_graph(6);
    const Vector split = ssl_joachims(d, two_labels(12, 2, 9), 0);
    for (Vertex v = 0; v < 6; ++v) CHECK(split[v] > 0.0);
    for (Vertex v = 6; v < 12; ++v) CHECK(split[v] < 0.0);

    // Opposite labels inside one clique leave the far clique neutral.
    const Vector far = ssl_joachims(d, two_labels(12, 1, 2), 0);
    for (Vertex v = 6; v < 12; ++v) CHECK(std::abs(far[v]) <= 1e-10);

    // Defining system.
    const Graph g = gen_gnp(25, 0.3, 2);
    const LabelSet l = two_labels(25, 3, 17);
    const Vector s = class_signs(l, 0);
    Matrix sys = oracle::comb_laplacian(g);
    sys.diagonal() += s.cwiseAbs();
    CHECK((ssl_joachims(g, l, 0) - sys.fullPivLu().solve(s)).lpNorm<Eigen::Infinity>() <= 1e-10);
  }

  TEST_CASE("zgl") {
    const Vector f = ssl_zgl(path_graph(5), two_labels(5, 0, 4), 0);
    CHECK((f - Vector{{1, 0.5, 0, -0.5, -1}}).norm() < 1e-12);

    const Graph g = gen_gnp(30, 0.2, 5);
    const LabelSet l = make_labels(30, {{0, 0}, {8, 1}, {20, 1}}, 2);
    const Vector h = ssl_zgl(g, l, 1);
    CHECK(h.maxCoeff() <= 1.0 + 1e-12);
    CHECK(h.minCoeff() >= -1.0 - 1e-12);
    for (Vertex v = 0; v < 30; ++v) {
      if (l.label[v] >= 0) continue;
      double avg = 0.0;
      for (const Neighbor& nb : g.neighbors(v)) avg += nb.weight * h[nb.vertex];
      CHECK(std::abs(avg / g.degree(v) - h[v]) <= 1e-10);
    }
    CHECK_THROWS_AS(ssl_zgl(Graph(4, {{0, 1, 1}, {2, 3, 1}}), two_labels(4, 0, 1), 0), ValidationError);
  }

  TEST_CASE("zhou") {
    const Graph g = gen_gnp(30, 0.2, 7);
    const LabelSet l = two_labels(30, 4, 11);
    const double alpha = 0.9;
    const Vector closed = ssl_zhou(g, l, 0, alpha);
    CHECK((zhou_iterate(g, l, 0, alpha, 500) - closed).lpNorm<Eigen::Infinity>() <= 1e-8);

    // Rearranged form: Y* = a' D^{1/2} (L + a' D)^{-1} D^{1/2} S with a' = (1 - alpha) / alpha.
    const double shifted = (1.0 - alpha) / alpha;
    const Vector dh = oracle::degrees(g).cwiseSqrt();
    Matrix sys = oracle::comb_laplacian(g);
    sys.diagonal() += shifted * oracle::degrees(g);
    Vector indicator = Vector::Zero(30);
    indicator[4] = 1.0;
    const Vector other = shifted * dh.cwiseProduct(sys.fullPivLu().solve(dh.cwiseProduct(indicator)));
    CHECK((closed - other).lpNorm<Eigen::Infinity>() <= 1e-10);

    CHECK((ssl_zhou(g, l, 0, 1e-9) - indicator).lpNorm<Eigen::Infinity>() <= 1e-8);

    // Reflection of a path with mirrored labels.
    const Vector a = ssl_zhou(path_graph(9), two_labels(9, 1, 7), 0, 0.8);
    const Vector b = ssl_zhou(path_graph(9), two_labels(9, 1, 7), 1, 0.8);
    CHECK((a - b.reverse()).norm() <= 1e-12);
  }

  TEST_CASE("score matrices and prediction") {
    const Graph d = dumbbell_graph(6);
    const LabelSet l = two_labels(12, 0, 11);
    for (SslMethod m : {SslMethod::kJoachims, SslMethod::kZgl, SslMethod::kZhou}) {
      const std::vector<int> pred = ssl_predict(ssl_scores(d, l, m));
      for (Vertex v = 0; v < 12; ++v) CHECK(pred[v] == (v < 6 ? 0 : 1));
    }
    CHECK(ssl_predict(Matrix{{1, 1}, {0, 2}}) == std::vector<int>{0, 1});
  }
}
