#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/generators.hpp"
#include "specgraph/resistance.hpp"

using namespace specgraph;

namespace {

std::vector<Graph> connected_suite() {
  return {path_graph(9),        cycle_graph(10),     grid2d_graph(4, 4),     complete_graph(7),
          star_graph(9),        hypercube_graph(4),  binary_tree_graph(15),  dumbbell_graph(5),
          lollipop_graph(5, 4), gen_d_regular(30, 3, 4), gen_ring_plus_matching(20, 2)};
}

}  // namespace

TEST_SUITE("resistance") {
  TEST_CASE("pseudo-inverse") {
    const PinvOperator k2 = lap_pinv(complete_graph(2));
    CHECK((k2.pinv - 0.25 * Matrix{{1, -1}, {-1, 1}}).norm() < 1e-14);
    const PinvOperator tri = lap_pinv(complete_graph(3));
    CHECK((tri.pinv - (3.0 * Matrix::Identity(3, 3) - Matrix::Ones(3, 3)) / 9.0).norm() < 1e-14);

    const Graph g = gen_gnp(30, 0.25, 3);
    const PinvOperator op = lap_pinv(g);
    CHECK((op.pinv - oracle::laplacian_pinv(g)).norm() < 1e-10);
    Vector b = Vector::LinSpaced(30, -1, 2);
    b.array() -= b.mean();
    CHECK((laplacian(g) * op.apply(b) - b).norm() < 1e-10);
    CHECK_THROWS_AS(lap_pinv(Graph(4, {{0, 1, 1}, {2, 3, 1}})), DisconnectedGraph);
  }

  TEST_CASE("effective resistance closed forms") {
    CHECK(effective_resistance(Graph(2, {{0, 1, 4.0}}), 0, 1) == doctest::Approx(0.25));
    CHECK(effective_resistance(cycle_graph(4), 0, 1) == doctest::Approx(0.75));
    CHECK(effective_resistance(cycle_graph(4), 2, 2) == 0.0);
    const Graph c = cycle_graph(11);
    for (Vertex k = 1; k < 11; ++k) {
      const double r = effective_resistance(c, 0, k);
      CHECK(r == doctest::Approx(k * (11.0 - k) / 11.0));
      if (k > 1 && k < 10) CHECK(r < std::min<double>(k, 11 - k));
    }
  }

  TEST_CASE("trees: resistance equals weighted geodesic distance") {
    const Graph tree(6, {{0, 1, 2.0}, {1, 2, 0.5}, {1, 3, 1.0}, {3, 4, 4.0}, {4, 5, 1.0}});
    const Matrix r = resistance_matrix(lap_pinv(tree));
    const Matrix d = geodesic_distances(tree);
    CHECK((r - d).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK(d(0, 5) == doctest::Approx(0.5 + 1.0 + 0.25 + 1.0));
    CHECK(resistance_metric_check(binary_tree_graph(12), 200, 1).ok);
  }

  TEST_CASE("total resistance") {
    for (std::size_t n : {3u, 6u, 10u}) {
      const double nn = static_cast<double>(n);
      CHECK(total_resistance(complete_graph(n)) == doctest::Approx(nn - 1.0));
      CHECK(total_resistance(path_graph(n)) == doctest::Approx((nn - 1.0) * nn * (nn + 1.0) / 6.0));
      CHECK(total_resistance(star_graph(n)) == doctest::Approx((nn - 1.0) * (nn - 1.0)));
    }
    for (const Graph& g : connected_suite()) {
      const TotalResistance t = total_resistance_both(g);
      CHECK(std::abs(t.pair_sum - t.spectral) <= kTotalResistanceTol * std::max(1.0, t.spectral));
    }
  }

  TEST_CASE("leverage scores") {
    for (const EdgeLeverage& rows : {leverage_scores(complete_graph(3))}) {
      for (const LeverageRow& row : rows) CHECK(row.leverage == doctest::Approx(2.0 / 3.0));
    }
    for (const Graph& g : connected_suite()) {
      const EdgeLeverage rows = leverage_scores(g);
      double sum = 0.0, psum = 0.0;
      for (const LeverageRow& row : rows) {
        sum += row.leverage;
        psum += row.probability;
        CHECK(row.leverage > 0.0);
        CHECK(row.leverage <= 1.0 + 1e-8);
        // Bridges have leverage one.
        if (!oracle::connected(g, row.edge_id)) CHECK(row.leverage == doctest::Approx(1.0).epsilon(1e-8));
      }
      CHECK(sum == doctest::Approx(static_cast<double>(g.num_vertices()) - 1.0).epsilon(1e-9));
      CHECK(psum == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(leverage_scores(Graph(4, {{0, 1, 1}, {2, 3, 1}})), DisconnectedGraph);
  }

  TEST_CASE("resistance is a metric below geodesic distance") {
    const MetricReport r = resistance_metric_check(gen_gnp(40, 0.3, 5), 500, 9);
    CHECK(r.ok);
    CHECK(r.triples == 500);
    CHECK(r.max_triangle_violation <= kMetricTol);
    CHECK(r.max_geodesic_excess <= kMetricTol);
    for (const Graph& g : connected_suite()) {
      const Matrix res = resistance_matrix(lap_pinv(g));
      CHECK((res - res.transpose()).norm() < 1e-12);
      CHECK(res.diagonal().cwiseAbs().maxCoeff() < 1e-12);
      CHECK((res - geodesic_distances(g)).maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("adding an edge never increases resistance") {
    std::mt19937_64 rng(6);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Graph g = gen_gnp(25, 0.2, seed);
      if (!is_connected(g)) continue;
      Vertex a = 0, b = 0;
      do {
        a = static_cast<Vertex>(rng() % 25);
        b = static_cast<Vertex>(rng() % 25);
      } while (a == b || g.weight(a, b) > 0.0);
      std::vector<Edge> edges(g.edges().begin(), g.edges().end());
      edges.push_back({a, b, 0.7});
      const Matrix before = resistance_matrix(lap_pinv(g));
      const Matrix after = resistance_matrix(lap_pinv(Graph(25, std::move(edges))));
      CHECK((after - before).maxCoeff() <= 1e-12);
    }
  }
}
