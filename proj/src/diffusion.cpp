#include "specgraph/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/LU>

#include "specgraph/eigen.hpp"
#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

void require_positive_degrees(const Graph& g, const char* what) {
  if (g.has_isolated_vertex()) throw DegenerateDegree(std::string(what) + " needs every vertex to have positive degree");
}

// Walk (1 - step) I + step A D^{-1}.
Matrix walk_with_step(const Graph& g, double step) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Matrix w = step * (g.adjacency_matrix() * g.degrees().cwiseInverse().asDiagonal());
  w.diagonal().array() += 1.0 - step;
  (void)n;
  return w;
}

void check_distribution(const Vector& p) {
  if (std::abs(p.sum() - 1.0) > 1e-10 || p.minCoeff() < -1e-14) {
    throw ValidationError("initial vector must be a probability distribution");
  }
}

}  // namespace

WalkOperator walk_matrix(const Graph& g, bool lazy) {
  require_positive_degrees(g, "walk matrix");
  return {walk_with_step(g, lazy ? kLazyStep : kPlainStep), lazy};
}

Vector stationary(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedGraph("stationary distribution needs a connected graph");
  require_positive_degrees(g, "stationary distribution");
  return g.degrees() / g.volume();
}

Vector evolve(const WalkOperator& w, const Vector& p0, int t) {
  if (p0.size() != w.matrix.rows()) throw ValidationError("distribution has wrong length");
  if (t < 0) throw ValidationError("step count must be nonnegative");
  check_distribution(p0);
  Vector p = p0;
  for (int i = 0; i < t; ++i) {
    p = w.matrix * p;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (p[j] < 0.0 && p[j] >= -1e-14) p[j] = 0.0;
    }
  }
  return p;
}

int regular_degree(const Graph& g) {
  const std::size_t n = g.num_vertices();
  for (const Edge& e : g.edges()) {
    if (e.w != 1.0) return -1;
  }
  const std::size_t d = g.neighbors(0).size();
  for (std::size_t v = 1; v < n; ++v) {
    if (g.neighbors(static_cast<Vertex>(v)).size() != d) return -1;
  }
  return static_cast<int>(d);
}

MixingReport mixing_bound_check(const Graph& g, const Vector& p0, int t_max, bool lazy) {
  const int d = regular_degree(g);
  if (d <= 0) throw ValidationError("mixing bound needs an unweighted d-regular graph");
  if (!is_connected(g)) throw DisconnectedGraph("mixing bound needs a connected graph");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());

  const EigenSystem adj = eig_symmetric(g.adjacency_matrix());
  // adj.values ascending: mu_1 = d is last, mu_n first.
  double alpha = 0.0;
  if (n > 1) {
    const double mu2 = adj.values[n - 2];
    const double mun = adj.values[0];
    alpha = lazy ? std::max(std::abs((1.0 + mu2 / d) / 2.0), std::abs((1.0 + mun / d) / 2.0))
                 : std::max(std::abs(mu2), std::abs(mun)) / d;
  }

  MixingReport r;
  r.alpha = alpha;
  const WalkOperator w = walk_matrix(g, lazy);
  const Vector u = Vector::Constant(n, 1.0 / static_cast<double>(n));
  check_distribution(p0);
  Vector p = p0;
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) p = w.matrix * p;
    MixingStep s{t, (p - u).lpNorm<1>(), root_n * std::pow(alpha, t)};
    if (s.l1_dist > s.bound + 1e-12) r.holds = false;
    r.steps.push_back(s);
  }
  return r;
}

Matrix heat_kernel(const Graph& g, double t) {
  if (t < 0.0) throw ValidationError("heat kernel time must be nonnegative");
  const EigenSystem es = eig_symmetric(laplacian(g));
  const Vector decay = (-t * es.values.array()).exp();
  return es.vectors * decay.asDiagonal() * es.vectors.transpose();
}

Vector pagerank_dense(const Graph& g, double alpha, const Vector& s, double step) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("teleport alpha must be in (0, 1]");
  if (!(step > 0.0 && step <= 1.0)) throw ValidationError("walk step must be in (0, 1]");
  if (s.size() != static_cast<Eigen::Index>(g.num_vertices())) throw ValidationError("seed has wrong length");
  require_positive_degrees(g, "PageRank");
  const auto n = s.size();
  const Matrix system = Matrix::Identity(n, n) - (1.0 - alpha) * walk_with_step(g, step);
  return system.partialPivLu().solve(alpha * s);
}

NcutWalkReport ncut_walk_check(const Graph& g, const NodeSet& s) {
  const PartitionScore score = partition_quality(g, s);
  const Vector pi = stationary(g);
  const WalkOperator w = walk_matrix(g, false);
  const std::size_t n = g.num_vertices();

  // Enumerate one-step transitions from the stationary start.
  double mass_s = 0.0, mass_sbar = 0.0, s_to_sbar = 0.0, sbar_to_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_i = s.contains(static_cast<Vertex>(i));
    (in_i ? mass_s : mass_sbar) += pi[static_cast<Eigen::Index>(i)];
    for (std::size_t j = 0; j < n; ++j) {
      const bool in_j = s.contains(static_cast<Vertex>(j));
      const double flow = w.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) *
                          pi[static_cast<Eigen::Index>(i)];
      if (in_i && !in_j) s_to_sbar += flow;
      if (!in_i && in_j) sbar_to_s += flow;
    }
  }
  NcutWalkReport r{score.ncut, s_to_sbar / mass_s, sbar_to_s / mass_sbar};
  if (std::abs(r.ncut - (r.p_leave_s + r.p_leave_sbar)) > kNcutTol) {
    throw InvariantViolation("NCUT differs from the sum of one-step escape probabilities");
  }
  return r;
}

double expander_mixing_ratio(const Graph& g, const NodeSet& s, const NodeSet& t, double lambda) {
  const int d = regular_degree(g);
  if (d <= 0) throw ValidationError("expander mixing needs an unweighted d-regular graph");
  double e_st = 0.0;
  for (const Edge& e : g.edges()) {
    if ((s.contains(e.u) && t.contains(e.v)) || (s.contains(e.v) && t.contains(e.u))) e_st += e.w;
  }
  const double ss = static_cast<double>(s.size()), ts = static_cast<double>(t.size());
  const double n = static_cast<double>(g.num_vertices());
  const double lhs = std::abs(e_st - d * ss * ts / n);
  const double rhs = lambda * std::sqrt(ss * ts);
  return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
}

ExpanderMixingReport expander_mixing_check(const Graph& g, int trials, std::uint64_t seed) {
  const int d = regular_degree(g);
  if (d <= 0) throw ValidationError("expander mixing needs an unweighted d-regular graph");
  const std::size_t n = g.num_vertices();
  if (n < 2) throw ValidationError("expander mixing needs at least two vertices");
  const EigenSystem adj = eig_symmetric(g.adjacency_matrix());
  const auto ni = static_cast<Eigen::Index>(n);

  ExpanderMixingReport r;
  r.degree = d;
  r.lambda = std::max(std::abs(adj.values[ni - 2]), std::abs(adj.values[0]));

  std::mt19937_64 rng(seed);
  std::vector<Vertex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
  for (int trial = 0; trial < trials; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_int_distribution<std::size_t> size_s(1, n - 1);
    const std::size_t a = size_s(rng);
    std::uniform_int_distribution<std::size_t> size_t_(1, n - a);
    const std::size_t b = size_t_(rng);
    NodeSet s(n, std::span<const Vertex>(perm.data(), a));
    NodeSet t(n, std::span<const Vertex>(perm.data() + a, b));
    r.max_ratio = std::max(r.max_ratio, expander_mixing_ratio(g, s, t, r.lambda));
  }
  return r;
}

}  // namespace specgraph
