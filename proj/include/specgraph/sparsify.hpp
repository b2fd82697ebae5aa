#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

struct SparsifierConfig {
  std::size_t samples = 0;  // r, draws with replacement
  double beta = 1.0;        // supplied p_e must be >= beta * l_e / (n - 1)
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> probabilities;  // per edge id; exact leverage if absent
};

// Sample count C n ln n / eps^2.
inline constexpr double kSampleConstant = 20.0;
std::size_t sample_size(std::size_t n, double eps, double c = kSampleConstant);

// Sampling distribution for cfg: the supplied one after validation, or the
// exact leverage probabilities.
std::vector<double> sampling_probabilities(const Graph& g, const SparsifierConfig& cfg);

// How often each edge id was drawn in cfg.samples i.i.d. draws.
std::vector<std::size_t> sample_counts(const std::vector<double>& probs, std::size_t samples,
                                       std::uint64_t seed);

// Reweighted subgraph: edge e drawn k times gets weight k w_e / (r p_e).
Graph sparsify(const Graph& g, const SparsifierConfig& cfg);

struct SimilarityReport {
  double sigma = 1.0;          // infinity when h is disconnected
  std::vector<double> ratios;  // generalized eigenvalues of (L_g, L_h) on 1-perp, ascending
  double min_quadratic_ratio = 0.0;
  double max_quadratic_ratio = 0.0;
  int quadratic_checks = 0;
};

inline constexpr int kQuadraticChecks = 100;

// Smallest sigma with L_h / sigma <= L_g <= sigma L_h. Also checks the ratio
// x^T L_g x / x^T L_h x of random vectors orthogonal to the constants.
SimilarityReport spectral_similarity(const Graph& g, const Graph& h, std::uint64_t seed = 1);

// ||I - (S U)^T (S U)||_2 where U is an orthonormal basis of the column
// span of W^{1/2} B and S is the sampling operator drawn from cfg.
double embedding_check(const Graph& g, const SparsifierConfig& cfg);

}  // namespace specgraph
