#include <cmath>
#include <limits>

#include "specgraph/errors.hpp"
#include "specgraph/local.hpp"

namespace specgraph {

namespace {

// Generalized pencil (L, D) restricted to the non-trivial directions, with
// the seed's coordinates a_i = u_i^T D s.
struct Pencil {
  Vector lambda;  // lambda_2 .. lambda_n
  Matrix u;       // D-orthonormal generalized eigenvectors, same order
  Vector coef;    // a_i
  double fiedler_weight = 0.0;  // sum of a_i^2 over the lambda_2 cluster
  Eigen::Index cluster = 1;     // size of the lambda_2 cluster
};

constexpr double kClusterTol = 1e-9;
constexpr double kOrthogonalSeedTol = 1e-12;

Pencil build_pencil(const Graph& g, const Vector& s) {
  const EigenSystem es = laplacian_eigensystem(g, LaplacianKind::kRandomWalk);
  const Eigen::Index n = es.size();
  Pencil p;
  p.lambda = es.values.tail(n - 1);
  p.u = es.vectors.rightCols(n - 1);
  p.coef = p.u.transpose() * g.degrees().cwiseProduct(s);
  while (p.cluster < n - 1 && p.lambda[p.cluster] - p.lambda[0] <= kClusterTol) ++p.cluster;
  p.fiedler_weight = p.coef.head(p.cluster).squaredNorm();
  return p;
}

// (x^T D s, x^T D x) for the unnormalized x(gamma) = sum a_i / (lambda_i - gamma) u_i.
struct Moments {
  double ds = 0.0;
  double dx = 0.0;
  double correlation() const { return ds * ds / dx; }
};

Moments moments(const Pencil& p, double gamma) {
  Moments m;
  for (Eigen::Index i = 0; i < p.lambda.size(); ++i) {
    const double t = p.coef[i] / (p.lambda[i] - gamma);
    m.ds += p.coef[i] * t;
    m.dx += t * t;
  }
  return m;
}

Vector direction(const Pencil& p, double gamma) {
  const Vector scale = (p.lambda.array() - gamma).inverse().matrix();
  return p.u * p.coef.cwiseProduct(scale);
}

}  // namespace

MovSolution mov_solve(const Graph& g, const SeedVector& seed, double kappa) {
  if (!(kappa >= 0.0 && kappa < 1.0)) throw ValidationError("kappa must lie in [0, 1)");
  if (g.num_vertices() < 2) throw ValidationError("mov_solve needs at least two vertices");
  if (!is_connected(g)) throw DisconnectedGraph("mov_solve needs a connected graph");
  const Vector& d = g.degrees();
  const Vector& s = seed.s;
  if (s.size() != d.size()) throw ValidationError("seed vector has wrong length");
  if (std::abs(s.dot(d)) > 1e-8 || std::abs(s.dot(d.cwiseProduct(s)) - 1.0) > 1e-8) {
    throw ValidationError("seed must satisfy s^T D 1 = 0 and s^T D s = 1");
  }

  const Pencil p = build_pencil(g, s);
  if (p.fiedler_weight <= kOrthogonalSeedTol) {
    throw ValidationError("seed is D-orthogonal to the Fiedler eigenspace");
  }
  const double lambda2 = p.lambda[0];

  MovSolution sol;
  sol.kappa = kappa;

  auto finish = [&](Vector x, double gamma, double c) {
    const double dnorm = std::sqrt(x.dot(d.cwiseProduct(x)));
    x /= dnorm;
    c /= dnorm;
    if (x.dot(d.cwiseProduct(s)) < 0.0) {
      x = -x;
      c = -c;
    }
    sol.x = std::move(x);
    sol.gamma = gamma;
    sol.c = c;
    sol.correlation_achieved = seed_correlation(g, sol.x, s);
  };

  if (kappa <= p.fiedler_weight) {
    // Constraint inactive: the best Fiedler direction already correlates enough.
    Vector x = p.u.leftCols(p.cluster) * p.coef.head(p.cluster);
    sol.constraint_inactive = true;
    finish(std::move(x), lambda2, 0.0);
    return sol;
  }

  double hi = lambda2 - kMovGapTol;
  double lo = -1e6;
  while (moments(p, lo).correlation() < kappa) {
    lo *= 2.0;
    if (!std::isfinite(lo)) throw InvariantViolation("could not bracket the correlation target");
  }
  double corr_lo = moments(p, lo).correlation();
  double corr_hi = moments(p, hi).correlation();
  double gamma = 0.5 * (lo + hi);
  double corr = moments(p, gamma).correlation();
  int steps = 0;
  while (std::abs(corr - kappa) > kMovKappaTol) {
    if (steps >= kMovMaxSteps) throw InvariantViolation("correlation bisection did not converge");
    gamma = 0.5 * (lo + hi);
    corr = moments(p, gamma).correlation();
    // Correlation is non-increasing in gamma.
    if (corr > corr_lo + 1e-12 || corr < corr_hi - 1e-12) {
      throw InvariantViolation("correlation is not monotone in gamma");
    }
    if (corr > kappa) {
      lo = gamma;
      corr_lo = corr;
    } else {
      hi = gamma;
      corr_hi = corr;
    }
    ++steps;
  }
  sol.bisection_steps = steps;
  finish(direction(p, gamma), gamma, 1.0);
  return sol;
}

double mov_residual(const Graph& g, const MovSolution& sol, const SeedVector& seed) {
  const Vector& d = g.degrees();
  const Vector lhs = g.apply_laplacian(sol.x) - sol.gamma * d.cwiseProduct(sol.x);
  return (lhs - sol.c * d.cwiseProduct(seed.s)).lpNorm<Eigen::Infinity>();
}

}  // namespace specgraph
