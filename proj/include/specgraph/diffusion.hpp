#pragma once

#include <cstdint>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

// Column-stochastic operator acting on distributions from the left:
// W = A D^{-1}, or (I + W) / 2 when lazy.
struct WalkOperator {
  Matrix matrix;
  bool lazy = false;
};

WalkOperator walk_matrix(const Graph& g, bool lazy);

// pi_i = d_i / Vol(G). Needs a connected graph.
Vector stationary(const Graph& g);

// W^t p0. Entries in [-1e-14, 0) are clamped to zero.
Vector evolve(const WalkOperator& w, const Vector& p0, int t);

struct MixingStep {
  int t = 0;
  double l1_dist = 0.0;
  double bound = 0.0;  // sqrt(n) * alpha^t
};

struct MixingReport {
  double alpha = 0.0;  // second largest |eigenvalue| of the walk
  std::vector<MixingStep> steps;
  bool holds = true;
};

// For an unweighted d-regular connected graph: ||W^t p0 - u||_1 against
// sqrt(n) alpha^t for t = 0..t_max. The non-lazy walk A/d uses
// alpha = max(|mu_2|, |mu_n|) / d from the adjacency spectrum; the lazy walk
// uses the corresponding bound for (I + A/d) / 2.
MixingReport mixing_bound_check(const Graph& g, const Vector& p0, int t_max, bool lazy = false);

// exp(-t L) with the combinatorial Laplacian, via the dense eigensystem.
Matrix heat_kernel(const Graph& g, double t);

// Fraction of each step that moves to a neighbour: the walk is
// (1 - step) I + step A D^{-1}. 1/2 is the lazy walk, 1 the plain walk.
inline constexpr double kLazyStep = 0.5;
inline constexpr double kPlainStep = 1.0;

// Personalized PageRank: the unique pi with pi = alpha s + (1 - alpha) W pi,
// by a direct dense solve. `s` may be any vector; for a distribution pi is a
// distribution too.
Vector pagerank_dense(const Graph& g, double alpha, const Vector& s, double step = kLazyStep);

struct NcutWalkReport {
  double ncut = 0.0;
  double p_leave_s = 0.0;     // P[X_1 in S̄ | X_0 in S], X_0 ~ pi
  double p_leave_sbar = 0.0;  // P[X_1 in S | X_0 in S̄]
};

inline constexpr double kNcutTol = 1e-10;

// Throws InvariantViolation if ncut != p_leave_s + p_leave_sbar.
NcutWalkReport ncut_walk_check(const Graph& g, const NodeSet& s);

struct ExpanderMixingReport {
  double lambda = 0.0;  // max(|mu_2|, |mu_n|) of the adjacency matrix
  int degree = 0;
  double max_ratio = 0.0;  // max |E(S,T) - d|S||T|/n| / (lambda sqrt(|S||T|))
};

// |E(S,T) - (d/n)|S||T|| / (lambda sqrt(|S||T|)) for disjoint S, T.
double expander_mixing_ratio(const Graph& g, const NodeSet& s, const NodeSet& t, double lambda);

ExpanderMixingReport expander_mixing_check(const Graph& g, int trials, std::uint64_t seed);

// Unweighted d-regular test; returns d or -1.
int regular_degree(const Graph& g);

// --- diffusions as regularized SDP optima ----------------------------------

enum class Regularizer { kEntropy, kLogDet, kPNorm };

enum class KernelKind { kHeat, kPageRank, kLazyPower };

struct KernelSpec {
  KernelKind kind = KernelKind::kHeat;
  double t = 1.0;      // heat time, or number of lazy steps
  double gamma = 0.2;  // PageRank teleport
  double alpha = 0.5;  // lazy-walk holding probability, >= 1/2
};

// Trace-one PSD matrix orthogonal to the trivial eigenvector of the
// normalized Laplacian, with the regularizer it optimizes.
struct DensityMatrix {
  Matrix x;
  double eta = 0.0;  // inverse regularization weight
  Regularizer regularizer = Regularizer::kEntropy;
  double p = 2.0;  // exponent for kPNorm
  KernelSpec spec;
};

// heat -> exp(-t L_sym); pagerank -> D^{-1/2} R_gamma D^{1/2} with
// R_gamma = gamma (I - (1 - gamma) A D^{-1})^{-1}; lazy_power -> symmetrized
// (alpha I + (1 - alpha) A D^{-1})^t. Each is deflated and trace-normalized.
DensityMatrix diffusion_kernel(const Graph& g, const KernelSpec& spec);

// F(X) = L_sym . X + (1/eta) G(X). Returns +inf when G is infinite.
double regularized_objective(const Graph& g, const Matrix& x, Regularizer reg, double eta, double p);

struct OptimalityReport {
  bool optimal = false;
  double objective = 0.0;  // F(X*)
  double margin = 0.0;     // min over candidates of F(candidate) - F(X*)
  // ||grad F(X*) - lambda* I|| on the feasible subspace.
  double first_order_residual = 0.0;
  int trials = 0;
};

inline constexpr double kSdpTol = 1e-8;

// Random feasible perturbations: rank-two moves X + h (u u^T - v v^T) with
// h in {1e-3, 1e-2, 1e-1}, projected back to trace one, PSD and orthogonal
// to the trivial direction.
OptimalityReport verify_regularized_optimum(const Graph& g, const DensityMatrix& dm, int trials,
                                            std::uint64_t seed);

}  // namespace specgraph
