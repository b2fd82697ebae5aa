#include <cmath>
#include <limits>
#include <random>

#include "specgraph/diffusion.hpp"
#include "specgraph/eigen.hpp"
#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

constexpr double kSteps[] = {1e-3, 1e-2, 1e-1};

struct ReducedSpectrum {
  Vector lambdas;  // nontrivial eigenvalues of L_sym, ascending
  Matrix basis;    // n x (n-1), orthonormal, orthogonal to D^{1/2} 1
};

ReducedSpectrum reduced_spectrum(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedGraph("regularized SDP needs a connected graph");
  if (g.num_vertices() < 2) throw ValidationError("regularized SDP needs at least two vertices");
  const EigenSystem es = eig_symmetric(laplacian(g, LaplacianKind::kNormalizedSymmetric));
  const Eigen::Index m = es.size() - 1;
  return {es.values.tail(m), es.vectors.rightCols(m)};
}

double regularizer_value(const Vector& eigs, Regularizer reg, double p) {
  double g = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double x = std::max(eigs[i], 0.0);
    switch (reg) {
      case Regularizer::kEntropy:
        if (x > 0.0) g += x * std::log(x);
        break;
      case Regularizer::kLogDet:
        if (x <= 0.0) return std::numeric_limits<double>::infinity();
        g -= std::log(x);
        break;
      case Regularizer::kPNorm:
        g += std::pow(x, p) / p;
        break;
    }
  }
  return g;
}

double regularizer_derivative(double x, Regularizer reg, double p) {
  switch (reg) {
    case Regularizer::kEntropy: return std::log(x) + 1.0;
    case Regularizer::kLogDet: return -1.0 / x;
    case Regularizer::kPNorm: return std::pow(x, p - 1.0);
  }
  return 0.0;
}

// Objective on the reduced (n-1)-dimensional coordinates; eta = 0 means the
// regularizer alone (the eta -> 0 limit of eta * F).
double reduced_objective(const Vector& lambdas, const Matrix& y, Regularizer reg, double eta, double p) {
  const Vector eigs = eig_symmetric(y).values;
  const double g = regularizer_value(eigs, reg, p);
  if (eta == 0.0) return g;
  if (std::isinf(g)) return g;
  return lambdas.dot(y.diagonal()) + g / eta;
}

Regularizer regularizer_for(KernelKind kind) {
  switch (kind) {
    case KernelKind::kHeat: return Regularizer::kEntropy;
    case KernelKind::kPageRank: return Regularizer::kLogDet;
    case KernelKind::kLazyPower: return Regularizer::kPNorm;
  }
  return Regularizer::kEntropy;
}

}  // namespace

DensityMatrix diffusion_kernel(const Graph& g, const KernelSpec& spec) {
  const ReducedSpectrum rs = reduced_spectrum(g);
  const Vector& lam = rs.lambdas;
  Vector weights(lam.size());
  DensityMatrix dm;
  dm.spec = spec;
  dm.regularizer = regularizer_for(spec.kind);

  switch (spec.kind) {
    case KernelKind::kHeat: {
      if (spec.t < 0.0) throw ValidationError("heat kernel time must be nonnegative");
      // Shift by lambda_2 before exponentiating so large t does not underflow.
      weights = (-spec.t * (lam.array() - lam[0])).exp();
      dm.eta = spec.t;
      break;
    }
    case KernelKind::kPageRank: {
      const double gamma = spec.gamma;
      if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("PageRank gamma must be in (0, 1]");
      weights = (gamma / (gamma + (1.0 - gamma) * lam.array())).matrix();
      if (gamma < 1.0) {
        const double shift = -gamma / (1.0 - gamma);
        dm.eta = (lam.array() - shift).inverse().sum();
      }
      break;
    }
    case KernelKind::kLazyPower: {
      const double a = spec.alpha;
      if (!(a >= 0.5 && a <= 1.0)) throw ValidationError("lazy walk needs holding probability in [1/2, 1]");
      if (!(spec.t >= 1.0)) throw ValidationError("lazy walk needs at least one step");
      const Vector mu = (1.0 - (1.0 - a) * lam.array()).max(0.0).matrix();
      weights = mu.array().pow(spec.t).matrix();
      dm.p = 1.0 + 1.0 / spec.t;
      dm.eta = (1.0 - a) * std::pow(weights.sum(), -1.0 / spec.t);
      break;
    }
  }
  const Vector probs = weights / weights.sum();
  dm.x = rs.basis * probs.asDiagonal() * rs.basis.transpose();
  return dm;
}

double regularized_objective(const Graph& g, const Matrix& x, Regularizer reg, double eta, double p) {
  const ReducedSpectrum rs = reduced_spectrum(g);
  const Matrix y = rs.basis.transpose() * x * rs.basis;
  // Express L_sym in the same reduced basis: it is diagonal there.
  return reduced_objective(rs.lambdas, y, reg, eta, p);
}

OptimalityReport verify_regularized_optimum(const Graph& g, const DensityMatrix& dm, int trials,
                                            std::uint64_t seed) {
  const ReducedSpectrum rs = reduced_spectrum(g);
  const Eigen::Index m = rs.lambdas.size();
  const Matrix y_star = rs.basis.transpose() * dm.x * rs.basis;

  OptimalityReport r;
  r.trials = trials;
  r.objective = reduced_objective(rs.lambdas, y_star, dm.regularizer, dm.eta, dm.p);

  // Stationarity: the gradient is diagonal in this basis and must be constant
  // across directions carrying mass.
  if (dm.eta > 0.0) {
    std::vector<double> grad;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double x = y_star(i, i);
      if (x > 1e-14) grad.push_back(rs.lambdas[i] + regularizer_derivative(x, dm.regularizer, dm.p) / dm.eta);
    }
    double mean = 0.0;
    for (double v : grad) mean += v;
    mean /= static_cast<double>(grad.size());
    for (double v : grad) r.first_order_residual = std::max(r.first_order_residual, std::abs(v - mean));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  r.margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    Vector u(m), v(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      u[i] = gauss(rng);
      v[i] = gauss(rng);
    }
    u.normalize();
    v.normalize();
    const double h = kSteps[trial % 3];
    Matrix y = y_star + h * (u * u.transpose() - v * v.transpose());
    // Project back: clip to PSD, renormalize trace.
    const EigenSystem es = eig_symmetric((y + y.transpose()) / 2.0);
    const Vector clipped = es.values.cwiseMax(0.0);
    y = es.vectors * (clipped / clipped.sum()).asDiagonal() * es.vectors.transpose();
    const double f = reduced_objective(rs.lambdas, y, dm.regularizer, dm.eta, dm.p);
    r.margin = std::min(r.margin, f - r.objective);
  }
  r.optimal = r.margin >= -kSdpTol;
  return r;
}

}  // namespace specgraph
