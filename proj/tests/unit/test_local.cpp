#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "specgraph/diffusion.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/generators.hpp"
#include "specgraph/local.hpp"

using namespace specgraph;

namespace {

NodeSet first_clique(std::size_t k) {
  std::vector<Vertex> members(k);
  for (std::size_t i = 0; i < k; ++i) members[i] = static_cast<Vertex>(i);
  return NodeSet(2 * k, members);
}

double dweighted(const Graph& g, const Vector& a, const Vector& b) { return a.dot(g.degrees().cwiseProduct(b)); }

}  // namespace

TEST_SUITE("local") {
  TEST_CASE("seed vectors") {
    const Graph k4 = complete_graph(4);
    const SeedVector s = seed_vector(k4, NodeSet(4, {0, 1}));
    // vol(T) = vol(T̄) = 6, 2m = 12: value sqrt(36/12)/6 on T.
    CHECK(s.s[0] == doctest::Approx(std::sqrt(3.0) / 6.0));
    CHECK(s.s[3] == doctest::Approx(-std::sqrt(3.0) / 6.0));
    CHECK(seed_correlation(k4, s.s, s.s) == doctest::Approx(1.0));
    CHECK_THROWS_AS(seed_vector(k4, NodeSet(4, {})), ValidationError);

    std::mt19937_64 rng(5);
    const Graph g = gen_gnp(30, 0.2, 3);
    for (int t = 0; t < 20; ++t) {
      std::vector<bool> mask(30);
      for (auto&& b : mask) b = (rng() % 4) == 0;
      const NodeSet set = NodeSet::from_mask(mask);
      if (!set.proper()) continue;
      const Vector v = seed_vector(g, set).s;
      CHECK(std::abs(dweighted(g, v, Vector::Ones(30))) <= 1e-10);
      CHECK(std::abs(dweighted(g, v, v) - 1.0) <= 1e-10);
    }
    const SeedVector w = seed_from_vector(g, Vector::LinSpaced(30, 0, 1));
    CHECK(std::abs(dweighted(g, w.s, Vector::Ones(30))) <= 1e-10);
    CHECK(std::abs(dweighted(g, w.s, w.s) - 1.0) <= 1e-10);
  }

  TEST_CASE("push with a large threshold does nothing") {
    const Graph g = cycle_graph(6);
    const Vector seed = Vector::Unit(6, 2);
    const PushState st = push_ppr(g, seed, 0.2, 1.0, 0.5);
    CHECK(st.push_count == 0);
    CHECK(st.p.isZero());
    CHECK(st.r == seed);
  }

  TEST_CASE("push stays exact against dense pagerank at every step") {
    for (double rho : {0.5, 0.3, 1.0}) {
      const Graph g = star_graph(8);
      const Vector seed = Vector::Unit(8, 0);
      const Vector target = pagerank_dense(g, 0.2, seed, rho);
      double worst = 0.0;
      double last_mass = 1.0;
      bool mass_decreases = true;
      bool bounded = true;
      const PushState st = push_ppr(g, seed, 0.2, 1e-6, rho, [&](const PushState& s) {
        const Vector resid = s.p + oracle::ppr(g, 0.2, s.r, rho) - target;
        worst = std::max(worst, resid.lpNorm<Eigen::Infinity>());
        const double mass = s.r.sum();
        mass_decreases = mass_decreases && mass < last_mass;
        last_mass = mass;
        bounded = bounded && s.p.minCoeff() >= 0.0 && s.r.minCoeff() >= 0.0 && s.p.sum() + s.r.sum() <= 1.0 + 1e-12;
      });
      CHECK(worst <= 1e-10);
      CHECK(mass_decreases);
      CHECK(bounded);
      for (Vertex u = 0; u < 8; ++u) CHECK(st.r[u] < 1e-6 * g.degree(u));
    }
  }

  TEST_CASE("push work and support bounds") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Graph g = gen_gnp(120, 0.05, seed);
      if (g.has_isolated_vertex()) continue;
      for (double alpha : {0.05, 0.2}) {
        for (double eps : {1e-3, 1e-4}) {
          const PushState st = push_ppr(g, Vector::Unit(120, 0), alpha, eps);
          CHECK(st.push_volume <= 1.0 / (alpha * eps));
          double support = 0.0;
          for (Vertex u = 0; u < 120; ++u) {
            if (st.p[u] > 0.0) support += g.degree(u);
          }
          CHECK(support <= 2.0 / ((1.0 - alpha) * eps));
        }
      }
    }
  }

  TEST_CASE("push sweep") {
    const Graph g = dumbbell_graph(6);
    const PushState st = push_ppr(g, Vector::Unit(12, 2), 0.05, 1e-6);
    const SweepResult s = push_sweep(g, st);
    CHECK(s.best_set.members() == first_clique(6).members());
    CHECK(s.best_conductance == doctest::Approx(1.0 / 31.0));

    // Support-restricted profile matches the full sweep over the padded vector.
    const PushState sparse = push_ppr(gen_gnp(80, 0.1, 4), Vector::Unit(80, 1), 0.2, 1e-3);
    const Graph g2 = gen_gnp(80, 0.1, 4);
    const SweepResult local = push_sweep(g2, sparse);
    const SweepResult full = sweep_cut(g2, -sparse.p.cwiseQuotient(g2.degrees()));
    for (std::size_t i = 0; i < local.profile.size(); ++i) {
      CHECK(local.profile[i] == doctest::Approx(full.profile[i]));
    }
    PushState empty = sparse;
    empty.p.setZero();
    CHECK_THROWS_AS(push_sweep(g2, empty), ValidationError);
  }

  TEST_CASE("l1 push identity and termination") {
    const Graph g = gen_gnp(60, 0.1, 8);
    for (double rho : {1.0, 0.5}) {
      double worst = 0.0;
      const PushState st = push_l1(g, NodeSet(60, {0, 1, 2}), 0.9, 1e-4, rho,
                                   [&](const PushState& s) { worst = std::max(worst, push_l1_identity_residual(g, s)); });
      CHECK(worst <= 1e-12);
      CHECK(st.r.minCoeff() >= 0.0);
      CHECK((st.r - 1e-4 * g.degrees()).maxCoeff() <= 1e-12 * 1e-4 * g.degrees().maxCoeff());
    }
  }

  TEST_CASE("l1 optimality conditions") {
    const Graph g = dumbbell_graph(6);
    const PushState st = push_l1(g, first_clique(6), 0.9, 1e-4, 1.0);
    const GmOptimality o = gm_optimality_check(g, st);
    CHECK(o.ok);
    CHECK(o.complementarity <= 1e-10);

    // Half pushes leave slack at pushed vertices.
    const PushState half = push_l1(g, first_clique(6), 0.9, 1e-4, 0.5);
    const GmOptimality oh = gm_optimality_check(g, half);
    CHECK_FALSE(oh.ok);
    CHECK(oh.complementarity > 1e-10);
    CHECK(oh.residual_identity <= 1e-12);
    CHECK_THROWS_AS(gm_optimality_check(g, push_ppr(g, Vector::Unit(12, 0), 0.1, 1e-3)), ValidationError);
  }

  TEST_CASE("l1 push approaches the degree-scaled pagerank solve as tau shrinks") {
    const Graph g = gen_gnp(40, 0.2, 6);
    const NodeSet s(40, {3, 7});
    const double beta = 0.8, alpha = 1.0 / beta - 1.0;
    const Vector v = s.indicator().cwiseProduct(g.degrees()) / s.volume(g);
    Matrix sys = oracle::comb_laplacian(g);
    sys.diagonal() += alpha * oracle::degrees(g);
    const Vector z = sys.fullPivLu().solve(alpha * v);
    const Vector limit = g.degrees().cwiseProduct(z);
    double prev = 1e9;
    for (double tau : {1e-3, 1e-5, 1e-7, 1e-9, 1e-11}) {
      const double err = (push_l1(g, s, beta, tau).p - limit).lpNorm<1>();
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev <= 1e-7);
  }

  TEST_CASE("mov at the extremes of kappa") {
    const Graph g = gen_gnp(30, 0.2, 11);
    const SeedVector seed = seed_vector(g, NodeSet(30, {0, 1, 2, 3}));
    const MovSolution zero = mov_solve(g, seed, 0.0);
    CHECK(zero.constraint_inactive);
    const Vector v2 = fiedler(g, LaplacianKind::kRandomWalk).vector;
    CHECK(std::abs(dweighted(g, zero.x, v2)) / std::sqrt(dweighted(g, v2, v2)) == doctest::Approx(1.0));

    const MovSolution near = mov_solve(g, seed, 0.999);
    CHECK_FALSE(near.constraint_inactive);
    CHECK(dweighted(g, near.x, seed.s) >= 0.99);
    CHECK(near.correlation_achieved == doctest::Approx(0.999).epsilon(1e-8));
    CHECK_THROWS_AS(mov_solve(g, seed, 1.0), ValidationError);
  }

  TEST_CASE("mov mid kappa satisfies the stationarity equation") {
    const Graph g = dumbbell_graph(6);
    const SeedVector seed = seed_vector(g, NodeSet(12, {0, 6}));
    const MovSolution sol = mov_solve(g, seed, 0.5);
    const double lambda2 = oracle::eigenvalues(oracle::norm_laplacian(g))[1];
    CHECK(sol.gamma < lambda2);
    CHECK(std::abs(sol.correlation_achieved - 0.5) <= kMovKappaTol);
    CHECK(std::abs(dweighted(g, sol.x, sol.x) - 1.0) <= 1e-8);
    CHECK(std::abs(dweighted(g, sol.x, Vector::Ones(12))) <= 1e-8);
    CHECK(mov_residual(g, sol, seed) <= 1e-7);
  }

  TEST_CASE("mov correlation is non-increasing in kappa order of gamma") {
    const Graph g = gen_gnp(25, 0.25, 2);
    const SeedVector seed = seed_vector(g, NodeSet(25, {0, 5}));
    double last_gamma = -1e300;
    for (double kappa : {0.99, 0.9, 0.7, 0.5}) {
      const MovSolution sol = mov_solve(g, seed, kappa);
      if (sol.constraint_inactive) break;
      CHECK(sol.gamma >= last_gamma);
      last_gamma = sol.gamma;
    }
  }

  TEST_CASE("mov with negative gamma is a rescaled pagerank vector") {
    const Graph g = gen_gnp(30, 0.2, 17);
    const SeedVector seed = seed_vector(g, NodeSet(30, {4, 9, 12}));
    const MovSolution sol = mov_solve(g, seed, 0.9);
    REQUIRE(sol.gamma < 0.0);
    const double shift = -sol.gamma;
    const double alpha = shift / (1.0 + shift);
    const Vector pi = pagerank_dense(g, alpha, g.degrees().cwiseProduct(seed.s), kPlainStep);
    Vector y = pi.cwiseQuotient(g.degrees());
    y /= std::sqrt(dweighted(g, y, y));
    CHECK(std::abs(dweighted(g, y, sol.x)) == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("mov rejects seeds orthogonal to the fiedler space") {
    // On a path the Fiedler vector is odd, so an even seed misses it.
    const Graph g = path_graph(5);
    const SeedVector seed = seed_from_vector(g, Vector{{1, 0, -1, 0, 1}});
    CHECK_THROWS_AS(mov_solve(g, seed, 0.5), ValidationError);
    CHECK_THROWS_AS(mov_solve(Graph(4, {{0, 1, 1}, {2, 3, 1}}), seed_vector(complete_graph(4), NodeSet(4, {0})), 0.5),
                    DisconnectedGraph);
  }

  TEST_CASE("localized cut graph") {
    const Graph k4 = complete_graph(4);
    const LocalizedCutGraph c = localized_cut_graph(k4, NodeSet(4, {0, 1}), 1.0);
    CHECK(c.graph.degree(c.s_node) == 6.0);
    CHECK(c.graph.degree(c.t_node) == 6.0);
    CHECK(c.graph.weight(0, c.s_node) == 3.0);
    CHECK(c.graph.weight(0, c.t_node) == 0.0);
    for (const Edge& e : k4.edges()) CHECK(c.graph.weight(e.u, e.v) == e.w);
    const LocalizedCutGraph zero = localized_cut_graph(k4, NodeSet(4, {0, 1}), 0.0);
    CHECK(zero.graph.degree(zero.s_node) == 0.0);
    CHECK(zero.graph.degree(zero.t_node) == 0.0);

    const Graph g = gen_gnp(20, 0.3, 2);
    const NodeSet s(20, {1, 4, 9});
    const LocalizedCutGraph cg = localized_cut_graph(g, s, 0.3);
    CHECK(cg.graph.degree(cg.s_node) == doctest::Approx(0.3 * s.volume(g)));
    CHECK(cg.graph.degree(cg.t_node) == doctest::Approx(0.3 * (g.volume() - s.volume(g))));
  }

  TEST_CASE("pagerank and localized cut agree") {
    const Graph d6 = dumbbell_graph(6);
    CHECK(pr_cut_equivalence_check(d6, first_clique(6), 0.1).ok);
    const Graph g = gen_gnp(30, 0.2, 9);
    CHECK(pr_cut_equivalence_check(g, NodeSet(30, {5}), 1.0).ok);
    const PrCutEquivalence small = pr_cut_equivalence_check(g, NodeSet(30, {5, 6}), 1e-4);
    CHECK(small.ok);
    // Independent PageRank side.
    Matrix sys = oracle::comb_laplacian(g);
    sys.diagonal() += 1e-4 * oracle::degrees(g);
    const NodeSet s(30, {5, 6});
    const Vector z = sys.fullPivLu().solve(1e-4 * s.indicator().cwiseProduct(g.degrees()) / s.volume(g));
    CHECK((small.pagerank_z - z).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}
