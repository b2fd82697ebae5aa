#include "specgraph/solver.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "specgraph/eigen.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/resistance.hpp"

namespace specgraph {

namespace {

Vector project(const Vector& b) { return b.array() - b.mean(); }

double l_norm(const Graph& g, const Vector& x) { return std::sqrt(std::max(0.0, x.dot(g.apply_laplacian(x)))); }

struct Prepared {
  Vector b;
  double removed = 0.0;
  double stop_scale = 0.0;  // sqrt(lambda_2 / lambda_max)
  std::optional<Vector> exact;
};

Prepared prepare(const Graph& g, const Vector& b, const CgOptions& opts) {
  if (b.size() != static_cast<Eigen::Index>(g.num_vertices())) throw ValidationError("right-hand side has wrong length");
  if (!(opts.eps > 0.0)) throw ValidationError("eps must be positive");
  if (opts.max_iter < 1) throw ValidationError("max_iter must be positive");
  if (!is_connected(g)) throw DisconnectedGraph("Laplacian solve needs a connected graph");
  Prepared p;
  p.removed = std::abs(b.mean());
  p.b = project(b);
  const EigenSystem es = eig_symmetric(laplacian(g));
  p.stop_scale = std::sqrt(es.values[1] / es.lambda_max());
  if (opts.oracle || opts.track_history) p.exact = lap_pinv(g).apply(p.b);
  return p;
}

double rel_error(const Graph& g, const Vector& x, const Vector& exact) {
  const double denom = l_norm(g, exact);
  return denom > 0.0 ? l_norm(g, x - exact) / denom : l_norm(g, x);
}

// Shared CG loop; `precondition` maps a residual to a search correction.
template <class Precondition>
SolveReport run_cg(const Graph& g, const Vector& b_in, const CgOptions& opts, Precondition precondition) {
  const Prepared prep = prepare(g, b_in, opts);
  const Vector& b = prep.b;
  SolveReport rep;
  rep.eps_requested = opts.eps;
  rep.projection_removed = prep.removed;
  rep.x = Vector::Zero(b.size());

  const double b_norm = b.norm();
  const double target = opts.eps * b_norm * prep.stop_scale;
  Vector r = b;
  Vector z = project(precondition(r));
  Vector dir = z;
  double rz = r.dot(z);
  rep.converged = b_norm == 0.0;
  while (!rep.converged && rep.iterations < opts.max_iter) {
    const Vector ld = g.apply_laplacian(dir);
    const double step = rz / dir.dot(ld);
    rep.x = project(rep.x + step * dir);
    r = project(r - step * ld);
    ++rep.iterations;
    if (opts.track_history) rep.error_history.push_back(rel_error(g, rep.x, *prep.exact));
    if (r.norm() <= target) {
      rep.converged = true;
      break;
    }
    z = project(precondition(r));
    const double rz_next = r.dot(z);
    dir = project(z + (rz_next / rz) * dir);
    rz = rz_next;
  }
  rep.rel_error_L = prep.exact ? rel_error(g, rep.x, *prep.exact)
                               : (b_norm > 0.0 ? project(b - g.apply_laplacian(rep.x)).norm() / (b_norm * prep.stop_scale) : 0.0);
  return rep;
}

}  // namespace

SolveReport solve_dense(const Graph& g, const Vector& b) {
  if (b.size() != static_cast<Eigen::Index>(g.num_vertices())) throw ValidationError("right-hand side has wrong length");
  const PinvOperator op = lap_pinv(g);
  SolveReport rep;
  rep.projection_removed = std::abs(b.mean());
  const Vector bp = project(b);
  rep.x = op.apply(bp);

  // Ground the last vertex and solve the reduced positive definite system.
  const Eigen::Index n = bp.size();
  Vector grounded = Vector::Zero(n);
  if (n > 1) {
    const Matrix l = laplacian(g);
    grounded.head(n - 1) = l.topLeftCorner(n - 1, n - 1).llt().solve(bp.head(n - 1));
    grounded = project(grounded);
  }
  rep.rel_error_L = rel_error(g, grounded, rep.x);
  if (rep.rel_error_L > 1e-10) throw InvariantViolation("pseudo-inverse and grounded solves disagree");
  return rep;
}

SolveReport solve_cg(const Graph& g, const Vector& b, const CgOptions& opts) {
  return run_cg(g, b, opts, [](const Vector& r) { return r; });
}

SolveReport solve_pcg(const Graph& g, const Vector& b, const Graph& precond, const CgOptions& opts) {
  if (precond.num_vertices() != g.num_vertices()) throw ValidationError("preconditioner must share the vertex set");
  if (!is_connected(precond)) {
    throw DisconnectedGraph("preconditioner graph is disconnected; sparsify with more samples");
  }
  const PinvOperator pre = lap_pinv(precond);
  return run_cg(g, b, opts, [&pre](const Vector& r) { return pre.apply(r); });
}

}  // namespace specgraph
