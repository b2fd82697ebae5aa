#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specgraph/graph.hpp"
#include "specgraph/spectra.hpp"

namespace specgraph {

struct SbmModel {
  int k = 0;
  std::vector<int> z;  // block of each vertex
  Matrix block_probs;  // k x k symmetric, entries in [0, 1]

  std::size_t num_vertices() const { return z.size(); }
};

struct DcSbmModel {
  SbmModel base;
  Vector theta;  // positive per-vertex degree parameters
};

// Throws ValidationError on malformed models.
void validate(const SbmModel& model);
void validate(const DcSbmModel& model);

// Each pair {i, j} is an edge independently with probability B[z_i][z_j].
Graph gen_sbm(const SbmModel& model, std::uint64_t seed);

// Same with probability theta_i theta_j B[z_i][z_j].
Graph gen_dcsbm(const DcSbmModel& model, std::uint64_t seed);

// Expected adjacency P_ij including the diagonal.
Matrix population_matrix(const SbmModel& model);
Matrix population_matrix(const DcSbmModel& model);

struct PlantedBisection {
  Graph graph;
  ClusterLabels truth;  // first n/2 vertices in block 0
  double mu1 = 0.0;     // n (p + q) / 2
  double mu2 = 0.0;     // n (p - q) / 2
  bool theory_void = false;  // p <= q
};

PlantedBisection gen_planted_bisection(std::size_t n, double p, double q, std::uint64_t seed);

// Blocks of (nearly) equal size, vertex i in block i * k / n.
std::vector<int> balanced_blocks(std::size_t n, int k);

// theta_i = low with probability low_fraction, else high; then every block
// is rescaled to mean 1.
Vector theta_two_point(const std::vector<int>& z, int k, double low, double high, double low_fraction,
                       std::uint64_t seed);

// Pareto(shape) draws truncated at cap, then rescaled per block to mean 1.
Vector theta_pareto(const std::vector<int>& z, int k, double shape, double cap, std::uint64_t seed);

// Sign split of the eigenvector of the second-largest adjacency eigenvalue.
ClusterLabels recover_bisection_adjacency(const Graph& g);

struct RecoveryReport {
  ClusterLabels labels;
  std::optional<double> misclassified_fraction;
  double tau_used = 0.0;
  double min_degree = 0.0;  // smallest observed degree
  double xi = 0.0;          // smallest nonzero row norm of the eigenvector block
  std::size_t zero_rows = 0;
};

// Regularized spectral clustering: top-k eigenvectors of
// (D + tau I)^{-1/2} A (D + tau I)^{-1/2}, rows scaled to unit length,
// k-means. Rows that are exactly zero join the nearest centroid of the raw rows.
RecoveryReport rsc(const Graph& g, int k, double tau, std::uint64_t seed,
                   const std::optional<ClusterLabels>& truth = std::nullopt);

inline constexpr int kMaxPermutationClasses = 8;

// Minimum over relabelings of found of the fraction of disagreeing vertices.
double misclassification_rate(const ClusterLabels& found, const ClusterLabels& truth);

}  // namespace specgraph
