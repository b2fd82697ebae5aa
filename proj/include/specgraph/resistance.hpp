#pragma once

#include <cstdint>
#include <vector>

#include "specgraph/eigen.hpp"
#include "specgraph/graph.hpp"

namespace specgraph {

// Dense pseudo-inverse of the combinatorial Laplacian of a connected graph.
struct PinvOperator {
  Matrix pinv;
  EigenSystem eig;

  double resistance(Vertex a, Vertex b) const {
    return pinv(a, a) + pinv(b, b) - 2.0 * pinv(a, b);
  }
  Vector apply(const Vector& b) const { return pinv * b; }
};

inline constexpr double kPinvNullTol = 1e-8;
inline constexpr double kPinvProjectorTol = 1e-7;

// V diag(1/lambda) V^T over the non-null eigenpairs. Checks L+ 1 = 0 and
// L L+ = I - J/n.
PinvOperator lap_pinv(const Graph& g);

// (e_a - e_b)^T L+ (e_a - e_b). Zero when a == b.
double effective_resistance(const Graph& g, Vertex a, Vertex b);

// All pairs at once.
Matrix resistance_matrix(const PinvOperator& op);

struct TotalResistance {
  double pair_sum = 0.0;  // sum over a < b of R_ab
  double spectral = 0.0;  // n * sum_{i >= 2} 1 / lambda_i
};

inline constexpr double kTotalResistanceTol = 1e-6;

// Computes both forms and throws if they disagree. Returns both.
TotalResistance total_resistance_both(const Graph& g);
double total_resistance(const Graph& g);

struct LeverageRow {
  std::size_t edge_id = 0;
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;
  double resistance = 0.0;
  double leverage = 0.0;     // w_e R_e
  double probability = 0.0;  // leverage / (n - 1)
};

using EdgeLeverage = std::vector<LeverageRow>;

inline constexpr double kLeverageSumTol = 1e-6;

// Per-edge leverage scores. Checks 0 < l_e <= 1 and sum = n - 1.
EdgeLeverage leverage_scores(const Graph& g);
EdgeLeverage leverage_scores(const Graph& g, const PinvOperator& op);

// Shortest-path distances with edge length 1 / w.
Matrix geodesic_distances(const Graph& g);

struct MetricReport {
  double max_triangle_violation = 0.0;  // max of R_ac - R_ab - R_bc, clipped at 0
  double max_geodesic_excess = 0.0;     // max of R_ab - dist_ab, clipped at 0
  int triples = 0;
  bool ok = false;
};

inline constexpr double kMetricTol = 1e-10;

MetricReport resistance_metric_check(const Graph& g, int trials, std::uint64_t seed);

}  // namespace specgraph
