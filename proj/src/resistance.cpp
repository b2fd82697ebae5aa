#include "specgraph/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <string>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

void require_connected(const Graph& g, const char* what) {
  if (!is_connected(g)) throw DisconnectedGraph(std::string(what) + " needs a connected graph");
}

}  // namespace

PinvOperator lap_pinv(const Graph& g) {
  require_connected(g, "lap_pinv");
  const Matrix l = laplacian(g);
  PinvOperator op;
  op.eig = eig_symmetric(l);
  const Eigen::Index n = op.eig.size();
  const Matrix v = op.eig.vectors.rightCols(n - 1);
  const Vector inv = op.eig.values.tail(n - 1).cwiseInverse();
  op.pinv = v * inv.asDiagonal() * v.transpose();

  const Vector null = op.pinv.rowwise().sum();
  if (null.lpNorm<Eigen::Infinity>() > kPinvNullTol) {
    throw InvariantViolation("pseudo-inverse does not annihilate the constant vector");
  }
  Matrix proj = -Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  proj.diagonal().array() += 1.0;
  if ((l * op.pinv - proj).lpNorm<Eigen::Infinity>() > kPinvProjectorTol) {
    throw InvariantViolation("L L+ is not the projector onto the complement of the constants");
  }
  return op;
}

double effective_resistance(const Graph& g, Vertex a, Vertex b) {
  if (a >= g.num_vertices() || b >= g.num_vertices()) throw ValidationError("vertex out of range");
  if (a == b) return 0.0;
  return lap_pinv(g).resistance(a, b);
}

Matrix resistance_matrix(const PinvOperator& op) {
  const Vector diag = op.pinv.diagonal();
  const Eigen::Index n = diag.size();
  Matrix r = -2.0 * op.pinv;
  r.colwise() += diag;
  r.rowwise() += diag.transpose();
  for (Eigen::Index i = 0; i < n; ++i) r(i, i) = 0.0;
  return r;
}

TotalResistance total_resistance_both(const Graph& g) {
  const PinvOperator op = lap_pinv(g);
  const Matrix r = resistance_matrix(op);
  const Eigen::Index n = r.rows();
  TotalResistance t;
  t.pair_sum = 0.5 * r.sum();
  t.spectral = static_cast<double>(n) * op.eig.values.tail(n - 1).cwiseInverse().sum();
  if (std::abs(t.pair_sum - t.spectral) > kTotalResistanceTol * std::max(1.0, t.spectral)) {
    throw InvariantViolation("pairwise and spectral total resistance disagree");
  }
  return t;
}

double total_resistance(const Graph& g) { return total_resistance_both(g).spectral; }

EdgeLeverage leverage_scores(const Graph& g) { return leverage_scores(g, lap_pinv(g)); }

EdgeLeverage leverage_scores(const Graph& g, const PinvOperator& op) {
  const double n_minus_one = static_cast<double>(g.num_vertices()) - 1.0;
  EdgeLeverage table;
  table.reserve(g.num_edges());
  double total = 0.0;
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    LeverageRow row{id, e.u, e.v, e.w, op.resistance(e.u, e.v), 0.0, 0.0};
    row.leverage = row.weight * row.resistance;
    row.probability = row.leverage / n_minus_one;
    if (!(row.leverage > 0.0) || row.leverage > 1.0 + 1e-8) {
      throw InvariantViolation("leverage score outside (0, 1] on edge " + std::to_string(id));
    }
    total += row.leverage;
    table.push_back(row);
  }
  if (std::abs(total - n_minus_one) > kLeverageSumTol) {
    throw InvariantViolation("leverage scores do not sum to n - 1");
  }
  return table;
}

Matrix geodesic_distances(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  Matrix dist = Matrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), inf);
  using Item = std::pair<double, Vertex>;
  for (std::size_t src = 0; src < n; ++src) {
    auto row = dist.row(static_cast<Eigen::Index>(src));
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[static_cast<Eigen::Index>(src)] = 0.0;
    heap.emplace(0.0, static_cast<Vertex>(src));
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > row[u]) continue;
      for (const Neighbor& nb : g.neighbors(u)) {
        const double cand = du + 1.0 / nb.weight;
        if (cand < row[nb.vertex]) {
          row[nb.vertex] = cand;
          heap.emplace(cand, nb.vertex);
        }
      }
    }
  }
  return dist;
}

MetricReport resistance_metric_check(const Graph& g, int trials, std::uint64_t seed) {
  const Matrix r = resistance_matrix(lap_pinv(g));
  const Matrix dist = geodesic_distances(g);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  MetricReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  for (int t = 0; t < trials; ++t) {
    const Eigen::Index a = pick(rng), b = pick(rng), c = pick(rng);
    rep.max_triangle_violation = std::max(rep.max_triangle_violation, r(a, c) - r(a, b) - r(b, c));
    ++rep.triples;
  }
  rep.max_geodesic_excess = std::max(0.0, (r - dist).maxCoeff());
  rep.ok = rep.max_triangle_violation <= kMetricTol && rep.max_geodesic_excess <= kMetricTol;
  return rep;
}

}  // namespace specgraph
