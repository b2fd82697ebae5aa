#pragma once

#include <optional>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

struct SolveReport {
  Vector x;
  int iterations = 0;
  bool converged = true;
  // ||x - L+ b||_L / ||L+ b||_L against the dense oracle, or the
  // residual-derived certificate when no oracle was computed.
  double rel_error_L = 0.0;
  double eps_requested = 0.0;
  double projection_removed = 0.0;  // |mean(b)| taken out before solving
  std::vector<double> error_history;  // oracle L-norm error per iteration, if requested
};

// x = L+ b with b projected onto the complement of the constants. The result
// is cross-checked against a grounded Cholesky solve.
SolveReport solve_dense(const Graph& g, const Vector& b);

struct CgOptions {
  double eps = 1e-8;
  int max_iter = 10000;
  bool oracle = true;          // compute rel_error_L against L+ b
  bool track_history = false;  // record the oracle error after every iteration
};

// Conjugate gradient on the complement of the constants. Stops once
//   ||b - L x||_2 <= eps ||b||_2 sqrt(lambda_2 / lambda_max),
// which certifies ||x - L+ b||_L <= eps ||L+ b||_L.
SolveReport solve_cg(const Graph& g, const Vector& b, const CgOptions& opts = {});

// Preconditioned CG where each preconditioner application solves the
// preconditioner graph's Laplacian system exactly. Same stopping rule.
SolveReport solve_pcg(const Graph& g, const Vector& b, const Graph& precond, const CgOptions& opts = {});

// --- semi-supervised learning ----------------------------------------------

// Per-vertex class in 0..num_classes-1, or -1 when unlabeled.
struct LabelSet {
  std::vector<int> label;
  int num_classes = 0;

  std::size_t num_labeled() const;
};

// Validates ids and classes and that each class has a labeled vertex.
LabelSet make_labels(std::size_t n, const std::vector<std::pair<Vertex, int>>& labeled, int num_classes);

// One-vs-rest target: +1 on vertices of class cls, -1 on other labeled
// vertices, 0 elsewhere.
Vector class_signs(const LabelSet& labels, int cls);

// (D_S + L)^{-1} s with D_S = diag(|s|).
Vector ssl_joachims(const Graph& g, const LabelSet& labels, int cls);

// Harmonic extension of the +-1 targets: L_UU f_U = -L_UL f_L.
Vector ssl_zgl(const Graph& g, const LabelSet& labels, int cls);

// (1 - alpha)(I - alpha D^{-1/2} W D^{-1/2})^{-1} S with S the 0/1 indicator of
// class cls.
Vector ssl_zhou(const Graph& g, const LabelSet& labels, int cls, double alpha);

// Y(t+1) = alpha W~ Y(t) + (1 - alpha) S starting from Y(0) = S.
Vector zhou_iterate(const Graph& g, const LabelSet& labels, int cls, double alpha, int iterations);

enum class SslMethod { kJoachims, kZgl, kZhou };

// n x num_classes score matrix.
Matrix ssl_scores(const Graph& g, const LabelSet& labels, SslMethod method, double alpha = 0.9);

// Row-wise argmax, lowest class on ties.
std::vector<int> ssl_predict(const Matrix& scores);

}  // namespace specgraph
