#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "specgraph/graph.hpp"
#include "specgraph/spectra.hpp"

namespace specgraph {

// Seed vector for a cut (T, T̄): s^T D 1 = 0 and s^T D s = 1.
struct SeedVector {
  Vector s;
  std::optional<NodeSet> origin_set;
};

SeedVector seed_vector(const Graph& g, const NodeSet& t);

// Wraps an arbitrary vector after projecting out the D-weighted constant and
// D-normalizing it.
SeedVector seed_from_vector(const Graph& g, const Vector& s);

// Correlation (a^T D b)^2 between two seed vectors.
double seed_correlation(const Graph& g, const Vector& a, const Vector& b);

// --- push ------------------------------------------------------------------

enum class PushVariant {
  kLazyPpr,  // approximate personalized PageRank, threshold r_u >= eps d_u
  kL1,       // direct walk with push fraction rho, threshold r_j > tau d_j
};

struct PushState {
  PushVariant variant = PushVariant::kLazyPpr;
  Vector p;     // approximation (x for the l1 variant)
  Vector r;     // residual
  Vector seed;  // seed distribution (v for the l1 variant)
  double alpha = 0.0;  // teleport (beta for the l1 variant)
  double eps = 0.0;    // threshold (tau for the l1 variant)
  double rho = 0.5;
  std::size_t push_count = 0;
  double push_volume = 0.0;  // sum of d_u over pushes
};

// Called after every push with the running state.
using PushObserver = std::function<void(const PushState&)>;

inline constexpr std::size_t kMaxPushes = 50'000'000;

// Approximate personalized PageRank by residual pushes. One push at u moves
// alpha r_u into p_u, keeps (1-alpha)(1-rho) r_u at u and spreads
// (1-alpha) rho r_u over the neighbours in proportion to edge weight. With
// rho = 1/2 this is the lazy-walk push, and throughout
//   p + ppr_alpha(r) = ppr_alpha(seed)
// for PageRank on the walk (1-rho) I + rho A D^{-1}. Vertices are processed
// FIFO, initial queue in id order.
PushState push_ppr(const Graph& g, const Vector& seed, double alpha, double eps, double rho = 0.5,
                   const PushObserver& observer = {});

// Sweep over p_u / d_u, descending, touching only supp(p) and its boundary.
SweepResult push_sweep(const Graph& g, const PushState& st);

// l1-regularized push seeded with v = d_S / vol(S). A push at j moves
// m = r_j - tau d_j rho into x_j, leaves tau d_j rho at j and adds
// beta m w_ij / d_j to each neighbour i. Maintains
//   r = (1 - beta) v - (I - beta A D^{-1}) x.
// A vertex is pushed while r_j exceeds tau d_j by more than kL1ExcessTol
// relative to tau d_j.
inline constexpr double kL1ExcessTol = 1e-12;
PushState push_l1(const Graph& g, const NodeSet& seed_set, double beta, double tau, double rho = 1.0,
                  const PushObserver& observer = {});

struct GmOptimality {
  bool ok = false;
  double max_violation = 0.0;
  double x_negativity = 0.0;     // max(0, -x_i)
  double r_bounds = 0.0;         // max violation of 0 <= r <= tau d
  double complementarity = 0.0;  // |x^T (tau d - r)|
  double residual_identity = 0.0;
};

inline constexpr double kGmTol = 1e-10;

// Optimality conditions of the sparsity-regularized cut problem for a
// push_l1 output.
GmOptimality gm_optimality_check(const Graph& g, const PushState& st);

// Residual of r = (1 - beta) v - (I - beta A D^{-1}) x, infinity norm.
double push_l1_identity_residual(const Graph& g, const PushState& st);

// --- locally-biased spectral program ---------------------------------------

struct MovSolution {
  Vector x;
  double gamma = 0.0;
  double kappa = 0.0;
  double c = 0.0;
  double correlation_achieved = 0.0;
  bool constraint_inactive = false;
  int bisection_steps = 0;
};

inline constexpr double kMovKappaTol = 1e-8;
inline constexpr double kMovGapTol = 1e-9;
inline constexpr int kMovMaxSteps = 200;

// x* = c (L - gamma D)^+ D s with gamma < lambda_2 chosen so that
// (x^T D s)^2 = kappa and x^T D x = 1.
MovSolution mov_solve(const Graph& g, const SeedVector& seed, double kappa);

// ||(L - gamma D) x - c D s||_inf.
double mov_residual(const Graph& g, const MovSolution& sol, const SeedVector& seed);

// --- localized cut graph ----------------------------------------------------

struct LocalizedCutGraph {
  Graph graph;  // base vertices 0..n-1, then s_node = n, t_node = n + 1
  Vertex s_node = 0;
  Vertex t_node = 0;
  double alpha = 0.0;
  NodeSet seed;
};

LocalizedCutGraph localized_cut_graph(const Graph& g, const NodeSet& s, double alpha);

struct PrCutEquivalence {
  bool ok = false;
  double max_diff = 0.0;
  Vector pagerank_z;  // (alpha D + L) z = alpha d_S / vol(S)
  Vector cut_x;       // free block of the 2-norm cut minimizer
};

inline constexpr double kPrCutTol = 1e-8;

PrCutEquivalence pr_cut_equivalence_check(const Graph& g, const NodeSet& s, double alpha);

}  // namespace specgraph
