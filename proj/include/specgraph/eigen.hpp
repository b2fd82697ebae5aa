#pragma once

#include <cstdint>
#include <functional>

#include "specgraph/graph.hpp"

namespace specgraph {

// Ascending eigenvalues with orthonormal eigenvectors (as columns) of a
// symmetric operator. Eigenvector signs are canonical: the first coordinate
// with magnitude above 1e-12 is positive.
struct EigenSystem {
  Vector values;
  Matrix vectors;
  double residual_tol = 0.0;  // max_i ||M v_i - lambda_i v_i||_2

  Eigen::Index size() const { return values.size(); }
  double lambda_max() const { return values[values.size() - 1]; }
};

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kDefaultEigTol = 1e-12;

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
// tol * max(1, ||m||_F). This is the reference solver every other spectral
// claim in the library is checked against.
EigenSystem eig_dense(const Matrix& m, double tol = kDefaultEigTol);

// Dense solver for production paths: Jacobi up to kJacobiMaxDim, Householder
// tridiagonalisation + implicit QL (Eigen) above it.
inline constexpr Eigen::Index kJacobiMaxDim = 256;
EigenSystem eig_symmetric(const Matrix& m);

// Power iteration on (shift*I - M) for the `count` smallest eigenpairs of a
// symmetric PSD operator, deflating `deflate` (orthonormal columns, e.g. the
// known trivial eigenvector) and every pair already found. Stops when the
// Rayleigh-quotient residual ||Mv - rho v|| <= tol.
struct IterativeOptions {
  double tol = 1e-8;
  int max_iter = 200000;
  std::uint64_t seed = 1;
};
EigenSystem eig_iterative(const std::function<Vector(const Vector&)>& apply, Eigen::Index n,
                          int count, double shift, const Matrix& deflate,
                          const IterativeOptions& opts = {});

// Flips each column so its first significant coordinate is positive.
void canonicalize_signs(Matrix& vectors);

}  // namespace specgraph
