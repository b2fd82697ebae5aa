#include "specgraph/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

constexpr int kJacobiMaxSweeps = 100;

void check_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eigensolver needs a square matrix");
  if (m.rows() == 0) throw ValidationError("eigensolver needs a nonempty matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw ValidationError("eigensolver needs a symmetric matrix");
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

double max_residual(const Matrix& m, const EigenSystem& es) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const Vector r = m * es.vectors.col(i) - es.values[i] * es.vectors.col(i);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

EigenSystem sorted(const Vector& values, const Matrix& vectors) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
  EigenSystem es;
  es.values.resize(values.size());
  es.vectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    es.values[idx] = values[order[i]];
    es.vectors.col(idx) = vectors.col(order[i]);
  }
  canonicalize_signs(es.vectors);
  return es;
}

}  // namespace

void canonicalize_signs(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, j)) > 1e-12) {
        if (vectors(i, j) < 0) vectors.col(j) *= -1.0;
        break;
      }
    }
  }
}

EigenSystem eig_dense(const Matrix& m, double tol) {
  check_symmetric(m);
  const Eigen::Index n = m.rows();
  Matrix a = (m + m.transpose()) / 2.0;
  Matrix v = Matrix::Identity(n, n);
  const double target = tol * std::max(1.0, a.norm());

  int sweep = 0;
  while (off_diagonal_norm(a) >= target) {
    if (++sweep > kJacobiMaxSweeps) {
      throw InvariantViolation("Jacobi eigensolver did not converge");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          const double np = c * akp - s * akq;
          const double nq = s * akp + c * akq;
          a(k, p) = np;
          a(p, k) = np;
          a(k, q) = nq;
          a(q, k) = nq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  EigenSystem es = sorted(a.diagonal(), v);
  es.residual_tol = max_residual(m, es);
  return es;
}

EigenSystem eig_symmetric(const Matrix& m) {
  if (m.rows() <= kJacobiMaxDim) return eig_dense(m);
  check_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.transpose()) / 2.0);
  if (solver.info() != Eigen::Success) throw InvariantViolation("symmetric eigensolver failed");
  EigenSystem es = sorted(solver.eigenvalues(), solver.eigenvectors());
  es.residual_tol = max_residual(m, es);
  return es;
}

EigenSystem eig_iterative(const std::function<Vector(const Vector&)>& apply, Eigen::Index n,
                          int count, double shift, const Matrix& deflate,
                          const IterativeOptions& opts) {
  if (count < 1 || count > n) throw ValidationError("eig_iterative: bad eigenpair count");
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Matrix basis = deflate;
  EigenSystem es;
  es.values.resize(count);
  es.vectors.resize(n, count);

  auto project_out = [&](Vector& x) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < basis.cols(); ++j) x -= basis.col(j).dot(x) * basis.col(j);
    }
  };

  for (int k = 0; k < count; ++k) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = gauss(rng);
    project_out(x);
    x.normalize();
    double rho = 0.0;
    bool converged = false;
    for (int it = 0; it < opts.max_iter; ++it) {
      const Vector mx = apply(x);
      rho = x.dot(mx);
      if ((mx - rho * x).norm() <= opts.tol) {
        converged = true;
        break;
      }
      Vector y = shift * x - mx;
      project_out(y);
      const double norm = y.norm();
      if (norm == 0.0) break;
      x = y / norm;
    }
    if (!converged) throw InvariantViolation("power iteration did not reach the residual tolerance");
    es.values[k] = rho;
    es.vectors.col(k) = x;
    basis.conservativeResize(n, basis.cols() + 1);
    basis.col(basis.cols() - 1) = x;
  }
  EigenSystem out = sorted(es.values, es.vectors);
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    worst = std::max(worst, (apply(out.vectors.col(k)) - out.values[k] * out.vectors.col(k)).norm());
  }
  out.residual_tol = worst;
  return out;
}

}  // namespace specgraph
