#include <algorithm>
#include <string>

#include <Eigen/Cholesky>

#include "specgraph/errors.hpp"
#include "specgraph/solver.hpp"

namespace specgraph {

namespace {

void check_labels(const Graph& g, const LabelSet& labels, int cls) {
  if (labels.label.size() != g.num_vertices()) throw ValidationError("label vector has wrong length");
  if (cls < 0 || cls >= labels.num_classes) throw ValidationError("class index out of range");
  if (labels.num_labeled() == 0) throw ValidationError("at least one vertex must be labeled");
}

// Every connected component must contain a labeled vertex, or the
// systems below are singular.
void require_labeled_components(const Graph& g, const LabelSet& labels) {
  const std::vector<int> comps = connected_components(g);
  std::vector<bool> anchored(comps.size(), false);
  for (std::size_t v = 0; v < comps.size(); ++v) {
    if (labels.label[v] >= 0) anchored[static_cast<std::size_t>(comps[v])] = true;
  }
  for (std::size_t v = 0; v < comps.size(); ++v) {
    if (!anchored[static_cast<std::size_t>(comps[v])]) {
      throw ValidationError("unlabeled component contains vertex " + std::to_string(v));
    }
  }
}

Vector class_indicator(const LabelSet& labels, int cls) {
  Vector s = Vector::Zero(static_cast<Eigen::Index>(labels.label.size()));
  for (std::size_t v = 0; v < labels.label.size(); ++v) {
    if (labels.label[v] == cls) s[static_cast<Eigen::Index>(v)] = 1.0;
  }
  return s;
}

}  // namespace

std::size_t LabelSet::num_labeled() const {
  return static_cast<std::size_t>(std::count_if(label.begin(), label.end(), [](int c) { return c >= 0; }));
}

LabelSet make_labels(std::size_t n, const std::vector<std::pair<Vertex, int>>& labeled, int num_classes) {
  if (num_classes < 1) throw ValidationError("need at least one class");
  LabelSet set{std::vector<int>(n, -1), num_classes};
  std::vector<bool> seen(static_cast<std::size_t>(num_classes), false);
  for (const auto& [v, c] : labeled) {
    if (v >= n) throw ValidationError("labeled vertex out of range: " + std::to_string(v));
    if (c < 0 || c >= num_classes) throw ValidationError("class out of range: " + std::to_string(c));
    if (set.label[v] >= 0 && set.label[v] != c) throw ValidationError("vertex labeled twice: " + std::to_string(v));
    set.label[v] = c;
    seen[static_cast<std::size_t>(c)] = true;
  }
  for (int c = 0; c < num_classes; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) throw ValidationError("class without labeled vertex: " + std::to_string(c));
  }
  return set;
}

Vector class_signs(const LabelSet& labels, int cls) {
  Vector s = Vector::Zero(static_cast<Eigen::Index>(labels.label.size()));
  for (std::size_t v = 0; v < labels.label.size(); ++v) {
    const int c = labels.label[v];
    if (c >= 0) s[static_cast<Eigen::Index>(v)] = c == cls ? 1.0 : -1.0;
  }
  return s;
}

Vector ssl_joachims(const Graph& g, const LabelSet& labels, int cls) {
  check_labels(g, labels, cls);
  require_labeled_components(g, labels);
  const Vector s = class_signs(labels, cls);
  Matrix system = laplacian(g);
  system.diagonal() += s.cwiseAbs();
  return system.llt().solve(s);
}

Vector ssl_zgl(const Graph& g, const LabelSet& labels, int cls) {
  check_labels(g, labels, cls);
  require_labeled_components(g, labels);

  const Vector f_all = class_signs(labels, cls);
  std::vector<Eigen::Index> free;
  std::vector<Eigen::Index> fixed;
  for (std::size_t v = 0; v < labels.label.size(); ++v) {
    (labels.label[v] >= 0 ? fixed : free).push_back(static_cast<Eigen::Index>(v));
  }
  Vector f = f_all;
  if (free.empty()) return f;
  const Matrix l = laplacian(g);
  const auto nu = static_cast<Eigen::Index>(free.size());
  const auto nl = static_cast<Eigen::Index>(fixed.size());
  Matrix l_uu(nu, nu);
  Matrix l_ul(nu, nl);
  Vector f_l(nl);
  for (Eigen::Index j = 0; j < nl; ++j) f_l[j] = f_all[fixed[static_cast<std::size_t>(j)]];
  for (Eigen::Index i = 0; i < nu; ++i) {
    for (Eigen::Index j = 0; j < nu; ++j) l_uu(i, j) = l(free[i], free[j]);
    for (Eigen::Index j = 0; j < nl; ++j) l_ul(i, j) = l(free[i], fixed[j]);
  }
  const Vector f_u = l_uu.llt().solve(-l_ul * f_l);
  for (Eigen::Index i = 0; i < nu; ++i) f[free[i]] = f_u[i];
  return f;
}

Vector ssl_zhou(const Graph& g, const LabelSet& labels, int cls, double alpha) {
  check_labels(g, labels, cls);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  const Matrix w = normalized_adjacency(g);
  Matrix system = -alpha * w;
  system.diagonal().array() += 1.0;
  return (1.0 - alpha) * system.llt().solve(class_indicator(labels, cls));
}

Vector zhou_iterate(const Graph& g, const LabelSet& labels, int cls, double alpha, int iterations) {
  check_labels(g, labels, cls);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (iterations < 0) throw ValidationError("iteration count must be nonnegative");
  const Matrix w = normalized_adjacency(g);
  const Vector s = class_indicator(labels, cls);
  Vector y = s;
  for (int t = 0; t < iterations; ++t) y = alpha * (w * y) + (1.0 - alpha) * s;
  return y;
}

Matrix ssl_scores(const Graph& g, const LabelSet& labels, SslMethod method, double alpha) {
  Matrix scores(static_cast<Eigen::Index>(g.num_vertices()), labels.num_classes);
  for (int c = 0; c < labels.num_classes; ++c) {
    switch (method) {
      case SslMethod::kJoachims: scores.col(c) = ssl_joachims(g, labels, c); break;
      case SslMethod::kZgl: scores.col(c) = ssl_zgl(g, labels, c); break;
      case SslMethod::kZhou: scores.col(c) = ssl_zhou(g, labels, c, alpha); break;
    }
  }
  return scores;
}

std::vector<int> ssl_predict(const Matrix& scores) {
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    scores.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

}  // namespace specgraph
