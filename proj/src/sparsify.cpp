#include "specgraph/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "specgraph/eigen.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/resistance.hpp"

namespace specgraph {

namespace {

// Orthonormal basis of the complement of the constant vector.
Matrix constant_complement(Eigen::Index n) {
  Matrix m = Matrix::Identity(n, n);
  m.col(0).setConstant(1.0);
  const Eigen::HouseholderQR<Matrix> qr(m);
  const Matrix q = qr.householderQ();
  return q.rightCols(n - 1);
}

}  // namespace

std::size_t sample_size(std::size_t n, double eps, double c) {
  if (!(eps > 0.0) || n < 2) throw ValidationError("sample_size needs eps > 0 and n >= 2");
  const double nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(c * nd * std::log(nd) / (eps * eps)));
}

std::vector<double> sampling_probabilities(const Graph& g, const SparsifierConfig& cfg) {
  if (!is_connected(g)) throw DisconnectedGraph("sparsify needs a connected graph");
  const EdgeLeverage lev = leverage_scores(g);
  std::vector<double> exact(lev.size());
  for (const LeverageRow& row : lev) exact[row.edge_id] = row.probability;
  if (!cfg.probabilities) return exact;

  const std::vector<double>& p = *cfg.probabilities;
  if (p.size() != g.num_edges()) throw ValidationError("one probability per edge is required");
  if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
  double total = 0.0;
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (!(p[e] > 0.0)) throw ValidationError("zero sampling probability on edge " + std::to_string(e));
    if (p[e] < cfg.beta * exact[e] - 1e-12) {
      throw ValidationError("probability on edge " + std::to_string(e) + " is below beta times its leverage share");
    }
    total += p[e];
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("sampling probabilities must sum to 1");
  return p;
}

std::vector<std::size_t> sample_counts(const std::vector<double>& probs, std::size_t samples,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> draw(probs.begin(), probs.end());
  std::vector<std::size_t> counts(probs.size(), 0);
  for (std::size_t t = 0; t < samples; ++t) ++counts[draw(rng)];
  return counts;
}

Graph sparsify(const Graph& g, const SparsifierConfig& cfg) {
  if (cfg.samples < 1) throw ValidationError("sparsify needs at least one sample");
  const std::vector<double> p = sampling_probabilities(g, cfg);
  const std::vector<std::size_t> counts = sample_counts(p, cfg.samples, cfg.seed);
  const double r = static_cast<double>(cfg.samples);
  std::vector<Edge> kept;
  for (std::size_t id = 0; id < counts.size(); ++id) {
    if (counts[id] == 0) continue;
    const Edge& e = g.edge(id);
    kept.push_back({e.u, e.v, static_cast<double>(counts[id]) * e.w / (r * p[id])});
  }
  return Graph(g.num_vertices(), std::move(kept));
}

SimilarityReport spectral_similarity(const Graph& g, const Graph& h, std::uint64_t seed) {
  if (g.num_vertices() != h.num_vertices()) throw ValidationError("graphs must share the vertex set");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (n < 2) throw ValidationError("similarity needs at least two vertices");
  SimilarityReport rep;
  const double inf = std::numeric_limits<double>::infinity();
  if (!is_connected(g)) throw DisconnectedGraph("reference graph must be connected");
  if (!is_connected(h)) {
    rep.sigma = inf;
    return rep;
  }

  const Matrix q = constant_complement(n);
  const Matrix lg = laplacian(g);
  const Matrix lh = laplacian(h);
  const Matrix a = q.transpose() * lg * q;
  const Matrix b = q.transpose() * lh * q;
  const Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(a, b);
  if (ges.info() != Eigen::Success) throw InvariantViolation("generalized eigensolver failed");
  const Vector rho = ges.eigenvalues();
  rep.ratios.assign(rho.data(), rho.data() + rho.size());
  rep.sigma = std::max(rho.maxCoeff(), 1.0 / rho.minCoeff());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  rep.min_quadratic_ratio = inf;
  rep.max_quadratic_ratio = 0.0;
  for (int t = 0; t < kQuadraticChecks; ++t) {
    Vector z(n - 1);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
    const Vector x = q * z;
    const double ratio = x.dot(lg * x) / x.dot(lh * x);
    rep.min_quadratic_ratio = std::min(rep.min_quadratic_ratio, ratio);
    rep.max_quadratic_ratio = std::max(rep.max_quadratic_ratio, ratio);
    ++rep.quadratic_checks;
  }
  const double slack = 1e-9 * rep.sigma;
  if (rep.max_quadratic_ratio > rep.sigma + slack || rep.min_quadratic_ratio < 1.0 / rep.sigma - slack) {
    throw InvariantViolation("quadratic-form ratio escapes the similarity interval");
  }
  return rep;
}

double embedding_check(const Graph& g, const SparsifierConfig& cfg) {
  if (cfg.samples < 1) throw ValidationError("embedding check needs at least one sample");
  const std::vector<double> p = sampling_probabilities(g, cfg);
  const std::vector<std::size_t> counts = sample_counts(p, cfg.samples, cfg.seed);

  // Phi = W^{1/2} B, and U = Phi V Lambda^{-1/2} from the eigensystem of L = Phi^T Phi.
  const EigenSystem es = eig_symmetric(laplacian(g));
  const Eigen::Index n = es.size();
  const Matrix v = es.vectors.rightCols(n - 1);
  const Vector inv_sqrt = es.values.tail(n - 1).cwiseSqrt().cwiseInverse();
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  Matrix u(m, n - 1);
  for (Eigen::Index id = 0; id < m; ++id) {
    const Edge& e = g.edge(static_cast<std::size_t>(id));
    u.row(id) = std::sqrt(e.w) * (v.row(e.u) - v.row(e.v)).cwiseProduct(inv_sqrt.transpose());
  }

  const double r = static_cast<double>(cfg.samples);
  Vector scale(m);
  for (Eigen::Index id = 0; id < m; ++id) {
    scale[id] = static_cast<double>(counts[static_cast<std::size_t>(id)]) / (r * p[static_cast<std::size_t>(id)]);
  }
  Matrix gram = u.transpose() * scale.asDiagonal() * u;
  gram.diagonal().array() -= 1.0;
  const Eigen::SelfAdjointEigenSolver<Matrix> es_gram(gram, Eigen::EigenvaluesOnly);
  return es_gram.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace specgraph
