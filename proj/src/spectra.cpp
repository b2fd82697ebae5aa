#include "specgraph/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

Vector centred_component_indicator(const Graph& g, LaplacianKind kind) {
  const auto labels = connected_components(g);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Vector ind = Vector::Zero(n);
  for (Eigen::Index v = 0; v < n; ++v) ind[v] = labels[static_cast<std::size_t>(v)] == 0 ? 1.0 : 0.0;
  const Vector& d = g.degrees();
  switch (kind) {
    case LaplacianKind::kCombinatorial: {
      Vector x = ind.array() - ind.mean();
      return x.normalized();
    }
    case LaplacianKind::kNormalizedSymmetric: {
      Vector x = ind.array() - ind.dot(d) / g.volume();
      x = d.cwiseSqrt().cwiseProduct(x);
      return x.normalized();
    }
    case LaplacianKind::kRandomWalk: {
      Vector x = ind.array() - ind.dot(d) / g.volume();
      return x / std::sqrt(x.dot(d.cwiseProduct(x)));
    }
  }
  return ind;
}

}  // namespace

EigenSystem laplacian_eigensystem(const Graph& g, LaplacianKind kind) {
  if (kind == LaplacianKind::kRandomWalk) {
    EigenSystem es = eig_symmetric(laplacian(g, LaplacianKind::kNormalizedSymmetric));
    es.vectors = g.degrees().cwiseSqrt().cwiseInverse().asDiagonal() * es.vectors;
    canonicalize_signs(es.vectors);
    return es;
  }
  return eig_symmetric(laplacian(g, kind));
}

FiedlerResult fiedler(const Graph& g, LaplacianKind kind) {
  if (g.num_vertices() < 2) throw ValidationError("fiedler needs at least two vertices");
  if (kind != LaplacianKind::kCombinatorial && g.has_isolated_vertex()) {
    throw DegenerateDegree("normalized Fiedler vector needs positive degrees");
  }
  FiedlerResult r;
  if (!is_connected(g)) {
    r.disconnected = true;
    r.lambda2 = 0.0;
    r.vector = centred_component_indicator(g, kind);
    return r;
  }
  const EigenSystem es = laplacian_eigensystem(g, kind);
  r.lambda2 = es.values[1];
  r.vector = es.vectors.col(1);
  return r;
}

SweepResult sweep_cut(const Graph& g, const Vector& x) {
  const std::size_t n = g.num_vertices();
  if (static_cast<std::size_t>(x.size()) != n) throw ValidationError("sweep vector has wrong length");
  if (n < 2) throw ValidationError("sweep needs at least two vertices");

  SweepResult r;
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), Vertex{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](Vertex a, Vertex b) { return x[a] < x[b]; });

  const double total = g.volume();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_prefix(n, false);
  double cut = 0.0;
  double vol = 0.0;
  r.profile.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vertex v = r.order[i];
    double inside = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (in_prefix[nb.vertex]) inside += nb.weight;
    }
    in_prefix[v] = true;
    cut += g.degree(v) - 2.0 * inside;
    vol += g.degree(v);
    const double denom = std::min(vol, total - vol);
    r.profile.push_back(denom > 0.0 ? std::max(cut, 0.0) / denom : inf);
  }

  const bool constant = x.maxCoeff() - x.minCoeff() <= 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff());
  std::size_t best = 0;
  if (!constant) {
    for (std::size_t i = 1; i < r.profile.size(); ++i) {
      if (r.profile[i] < r.profile[best]) best = i;
    }
  }
  r.best_index = best + 1;
  r.best_conductance = r.profile[best];
  std::vector<Vertex> prefix(r.order.begin(), r.order.begin() + static_cast<std::ptrdiff_t>(r.best_index));
  NodeSet s(n, prefix);
  r.best_set = s.volume(g) <= total - s.volume(g) ? s : s.complement();
  return r;
}

CheegerReport cheeger_report(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedGraph("Cheeger report needs a connected graph");
  const FiedlerResult f = fiedler(g, LaplacianKind::kNormalizedSymmetric);
  CheegerReport r;
  r.lambda2 = std::max(f.lambda2, 0.0);
  const Vector x = g.degrees().cwiseSqrt().cwiseInverse().cwiseProduct(f.vector);
  r.sweep = sweep_cut(g, x);
  r.sweep_phi = r.sweep.best_conductance;
  r.lower = r.lambda2 / 2.0;
  r.upper = std::sqrt(2.0 * r.lambda2);
  if (r.sweep_phi < r.lower - kCheegerTol || r.sweep_phi > r.upper + kCheegerTol) {
    throw InvariantViolation("Cheeger sandwich violated: lambda2/2=" + std::to_string(r.lower) +
                             " phi=" + std::to_string(r.sweep_phi) +
                             " sqrt(2 lambda2)=" + std::to_string(r.upper));
  }
  return r;
}

ClusterLabels spectral_cluster(const Graph& g, int k, ClusterVariant variant, std::uint64_t seed) {
  const auto n = static_cast<int>(g.num_vertices());
  if (k < 1) throw ValidationError("spectral_cluster needs k >= 1");
  if (k > n) throw ValidationError("spectral_cluster needs k <= n");
  if (k == 1) return {std::vector<int>(static_cast<std::size_t>(n), 0), 1};

  Matrix u;
  switch (variant) {
    case ClusterVariant::kUnnormalized:
      u = laplacian_eigensystem(g, LaplacianKind::kCombinatorial).vectors.leftCols(k);
      break;
    case ClusterVariant::kRandomWalk:
      u = laplacian_eigensystem(g, LaplacianKind::kRandomWalk).vectors.leftCols(k);
      break;
    case ClusterVariant::kNormalizedRowNorm: {
      u = laplacian_eigensystem(g, LaplacianKind::kNormalizedSymmetric).vectors.leftCols(k);
      for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double norm = u.row(i).norm();
        if (norm > 0.0) u.row(i) /= norm;
      }
      break;
    }
  }
  return kmeans(u, k, seed);
}

SpectralFacts spectral_facts(const Graph& g) {
  const Vector& d = g.degrees();
  Vector inv_sqrt(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) inv_sqrt[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  Matrix l = -(inv_sqrt.asDiagonal() * g.adjacency_matrix() * inv_sqrt.asDiagonal());
  for (Eigen::Index i = 0; i < d.size(); ++i) l(i, i) = d[i] > 0.0 ? 1.0 : 0.0;

  const EigenSystem es = eig_symmetric(l);
  SpectralFacts f;
  f.lambda_max = es.lambda_max();
  const double zero_tol = kZeroEigTol * std::max(1.0, f.lambda_max);
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (std::abs(es.values[i]) <= zero_tol) ++f.num_zero_eigs;
  }
  f.has_bipartite_component = f.lambda_max >= 2.0 - kZeroEigTol;
  if (f.num_zero_eigs != num_components(g)) {
    throw InvariantViolation("zero-eigenvalue multiplicity differs from component count");
  }
  return f;
}

}  // namespace specgraph
