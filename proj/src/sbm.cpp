#include "specgraph/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "specgraph/eigen.hpp"
#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

template <class Prob>
Graph coin_flips(std::size_t n, std::uint64_t seed, Prob prob) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng) < prob(i, j)) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

void normalize_per_block(Vector& theta, const std::vector<int>& z, int k) {
  std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
  std::vector<double> count(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum[static_cast<std::size_t>(z[i])] += theta[static_cast<Eigen::Index>(i)];
    count[static_cast<std::size_t>(z[i])] += 1.0;
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto b = static_cast<std::size_t>(z[i]);
    theta[static_cast<Eigen::Index>(i)] *= count[b] / sum[b];
  }
}

void check_blocks(const std::vector<int>& z, int k) {
  if (k < 1) throw ValidationError("need at least one block");
  for (int b : z) {
    if (b < 0 || b >= k) throw ValidationError("block label out of range: " + std::to_string(b));
  }
}

// Renumbers labels by first appearance.
ClusterLabels canonical(std::vector<int> labels, int k) {
  std::vector<int> map(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int& l : labels) {
    auto& m = map[static_cast<std::size_t>(l)];
    if (m < 0) m = next++;
    l = m;
  }
  return {std::move(labels), k};
}

}  // namespace

void validate(const SbmModel& model) {
  check_blocks(model.z, model.k);
  const Matrix& b = model.block_probs;
  if (b.rows() != model.k || b.cols() != model.k) throw ValidationError("block matrix must be k x k");
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > 0.0) throw ValidationError("block matrix must be symmetric");
  if (b.minCoeff() < 0.0 || b.maxCoeff() > 1.0) throw ValidationError("block probabilities must lie in [0, 1]");
  if (model.z.empty()) throw ValidationError("model has no vertices");
}

void validate(const DcSbmModel& model) {
  validate(model.base);
  if (model.theta.size() != static_cast<Eigen::Index>(model.base.num_vertices())) {
    throw ValidationError("theta has wrong length");
  }
  if (model.theta.minCoeff() <= 0.0) throw ValidationError("theta must be positive");
  const Matrix p = population_matrix(model);
  if (p.maxCoeff() > 1.0) throw ValidationError("theta_i theta_j B exceeds 1 for some pair");
}

Graph gen_sbm(const SbmModel& model, std::uint64_t seed) {
  validate(model);
  const Matrix& b = model.block_probs;
  return coin_flips(model.num_vertices(), seed,
                    [&](std::size_t i, std::size_t j) { return b(model.z[i], model.z[j]); });
}

Graph gen_dcsbm(const DcSbmModel& model, std::uint64_t seed) {
  validate(model);
  const Matrix& b = model.base.block_probs;
  const std::vector<int>& z = model.base.z;
  const Vector& th = model.theta;
  return coin_flips(model.base.num_vertices(), seed, [&](std::size_t i, std::size_t j) {
    return th[static_cast<Eigen::Index>(i)] * th[static_cast<Eigen::Index>(j)] * b(z[i], z[j]);
  });
}

Matrix population_matrix(const SbmModel& model) {
  const auto n = static_cast<Eigen::Index>(model.num_vertices());
  Matrix p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) p(i, j) = model.block_probs(model.z[i], model.z[j]);
  }
  return p;
}

Matrix population_matrix(const DcSbmModel& model) {
  return model.theta.asDiagonal() * population_matrix(model.base) * model.theta.asDiagonal();
}

std::vector<int> balanced_blocks(std::size_t n, int k) {
  if (k < 1) throw ValidationError("need at least one block");
  std::vector<int> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = static_cast<int>(i * static_cast<std::size_t>(k) / n);
  return z;
}

PlantedBisection gen_planted_bisection(std::size_t n, double p, double q, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw ValidationError("planted bisection needs an even n >= 2");
  SbmModel model{2, balanced_blocks(n, 2), Matrix{{p, q}, {q, p}}};
  Graph g = gen_sbm(model, seed);
  const double nd = static_cast<double>(n);
  return {std::move(g), {model.z, 2}, nd * (p + q) / 2.0, nd * (p - q) / 2.0, p <= q};
}

Vector theta_two_point(const std::vector<int>& z, int k, double low, double high, double low_fraction,
                       std::uint64_t seed) {
  check_blocks(z, k);
  if (!(low > 0.0 && high > 0.0)) throw ValidationError("theta values must be positive");
  if (!(low_fraction >= 0.0 && low_fraction <= 1.0)) throw ValidationError("low_fraction must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution is_low(low_fraction);
  Vector theta(static_cast<Eigen::Index>(z.size()));
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = is_low(rng) ? low : high;
  normalize_per_block(theta, z, k);
  return theta;
}

Vector theta_pareto(const std::vector<int>& z, int k, double shape, double cap, std::uint64_t seed) {
  check_blocks(z, k);
  if (!(shape > 0.0) || !(cap >= 1.0)) throw ValidationError("Pareto sampler needs shape > 0 and cap >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector theta(static_cast<Eigen::Index>(z.size()));
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double u = 1.0 - unif(rng);  // (0, 1]
    theta[i] = std::min(cap, std::pow(u, -1.0 / shape));
  }
  normalize_per_block(theta, z, k);
  return theta;
}

ClusterLabels recover_bisection_adjacency(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 4) throw ValidationError("bisection recovery needs at least four vertices");
  const EigenSystem es = eig_symmetric(g.adjacency_matrix());
  const auto last = static_cast<Eigen::Index>(n) - 1;
  Vector v = es.vectors.col(last - 1);
  const double scale = std::max(1.0, std::abs(es.values[last]));
  if (es.values[last] - es.values[last - 1] <= 1e-9 * scale) {
    // Repeated top eigenvalue: take the direction of the top pair orthogonal to the constants.
    const Matrix top = es.vectors.rightCols(2);
    const Eigen::Vector2d c = top.transpose() * Vector::Ones(static_cast<Eigen::Index>(n));
    if (c.norm() > 0.0) v = top * Eigen::Vector2d(-c[1], c[0]);
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = v[static_cast<Eigen::Index>(i)] >= 0.0 ? 0 : 1;
  return canonical(std::move(labels), 2);
}

RecoveryReport rsc(const Graph& g, int k, double tau, std::uint64_t seed,
                   const std::optional<ClusterLabels>& truth) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (k < 2 || k > n) throw ValidationError("rsc needs 2 <= k <= n");
  if (!(tau >= 0.0)) throw ValidationError("tau must be nonnegative");
  if (tau == 0.0 && g.has_isolated_vertex()) {
    throw DegenerateDegree("tau = 0 is undefined with an isolated vertex");
  }

  RecoveryReport rep;
  rep.tau_used = tau;
  rep.min_degree = g.min_degree();
  const Vector inv_sqrt = (g.degrees().array() + tau).sqrt().inverse().matrix();
  const Matrix reg = inv_sqrt.asDiagonal() * g.adjacency_matrix() * inv_sqrt.asDiagonal();
  const EigenSystem es = eig_symmetric(reg);
  const Matrix x = es.vectors.rightCols(k);

  const double inf = std::numeric_limits<double>::infinity();
  const Vector norms = x.rowwise().norm();
  rep.xi = inf;
  std::vector<Eigen::Index> live;
  std::vector<Eigen::Index> dead;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (norms[i] > 0.0) {
      live.push_back(i);
      rep.xi = std::min(rep.xi, norms[i]);
    } else {
      dead.push_back(i);
    }
  }
  rep.zero_rows = dead.size();
  if (static_cast<Eigen::Index>(live.size()) < k) throw ValidationError("too few nonzero embedding rows for k clusters");

  Matrix points(static_cast<Eigen::Index>(live.size()), k);
  for (std::size_t r = 0; r < live.size(); ++r) points.row(static_cast<Eigen::Index>(r)) = x.row(live[r]) / norms[live[r]];
  const ClusterLabels found = kmeans(points, k, seed);

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (std::size_t r = 0; r < live.size(); ++r) labels[static_cast<std::size_t>(live[r])] = found.labels[r];
  if (!dead.empty()) {
    Matrix centroid = Matrix::Zero(k, k);
    Vector count = Vector::Zero(k);
    for (std::size_t r = 0; r < live.size(); ++r) {
      centroid.row(found.labels[r]) += x.row(live[r]);
      count[found.labels[r]] += 1.0;
    }
    // A zero row's nearest raw centroid is the one of smallest norm.
    Eigen::Index nearest = 0;
    (centroid.array().colwise() / count.array().max(1.0)).matrix().rowwise().norm().minCoeff(&nearest);
    for (Eigen::Index i : dead) labels[static_cast<std::size_t>(i)] = static_cast<int>(nearest);
  }
  rep.labels = canonical(std::move(labels), k);
  if (truth) rep.misclassified_fraction = misclassification_rate(rep.labels, *truth);
  return rep;
}

double misclassification_rate(const ClusterLabels& found, const ClusterLabels& truth) {
  if (found.labels.size() != truth.labels.size()) throw ValidationError("label vectors differ in length");
  if (found.labels.empty()) throw ValidationError("empty label vectors");
  const int k = std::max({found.k, truth.k,
                          *std::max_element(found.labels.begin(), found.labels.end()) + 1,
                          *std::max_element(truth.labels.begin(), truth.labels.end()) + 1});
  if (k > kMaxPermutationClasses) throw ValidationError("misclassification supports at most 8 classes");
  const auto ku = static_cast<std::size_t>(k);
  // confusion[f][t] = number of vertices with found label f and true label t.
  std::vector<std::size_t> confusion(ku * ku, 0);
  for (std::size_t i = 0; i < found.labels.size(); ++i) {
    const int f = found.labels[i];
    const int t = truth.labels[i];
    if (f < 0 || t < 0) throw ValidationError("labels must be nonnegative");
    ++confusion[static_cast<std::size_t>(f) * ku + static_cast<std::size_t>(t)];
  }
  std::vector<std::size_t> perm(ku);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best_agree = 0;
  do {
    std::size_t agree = 0;
    for (std::size_t f = 0; f < ku; ++f) agree += confusion[f * ku + perm[f]];
    best_agree = std::max(best_agree, agree);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double n = static_cast<double>(found.labels.size());
  return (n - static_cast<double>(best_agree)) / n;
}

}  // namespace specgraph
