#include "specgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.u << ", " << e.v << ", " << e.w << ")";
  return os.str();
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) {
    throw GraphError(GraphErrorKind::kEmptyGraph, "graph needs at least one vertex");
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::size_t> deg_count(n_, 0);
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw GraphError(GraphErrorKind::kVertexOutOfRange,
                       "edge endpoint out of range: " + edge_str(e));
    }
    if (e.u == e.v) {
      throw GraphError(GraphErrorKind::kSelfLoop, "self-loop: " + edge_str(e));
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw GraphError(GraphErrorKind::kNonPositiveWeight,
                       "edge weight must be positive and finite: " + edge_str(e));
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw GraphError(GraphErrorKind::kDuplicateEdge, "duplicate edge: " + edge_str(e));
    }
    ++deg_count[e.u];
    ++deg_count[e.v];
  }

  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg_count[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  degrees_ = Vector::Zero(static_cast<Eigen::Index>(n_));
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[fill[e.u]++] = {e.v, e.w, id};
    adjacency_[fill[e.v]++] = {e.u, e.w, id};
    degrees_[e.u] += e.w;
    degrees_[e.v] += e.w;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  volume_ = degrees_.sum();
}

double Graph::min_degree() const { return degrees_.minCoeff(); }

double Graph::weight(Vertex u, Vertex v) const {
  for (const Neighbor& nb : neighbors(u)) {
    if (nb.vertex == v) return nb.weight;
  }
  return 0.0;
}

Matrix Graph::adjacency_matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Matrix a = Matrix::Zero(n, n);
  for (const Edge& e : edges_) {
    a(e.u, e.v) = e.w;
    a(e.v, e.u) = e.w;
  }
  return a;
}

Vector Graph::apply_laplacian(const Vector& x) const {
  Vector y = degrees_.cwiseProduct(x);
  for (const Edge& e : edges_) {
    y[e.u] -= e.w * x[e.v];
    y[e.v] -= e.w * x[e.u];
  }
  return y;
}

Vector Graph::apply_adjacency(const Vector& x) const {
  Vector y = Vector::Zero(x.size());
  for (const Edge& e : edges_) {
    y[e.u] += e.w * x[e.v];
    y[e.v] += e.w * x[e.u];
  }
  return y;
}

std::vector<Edge> Graph::canonical_edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return out;
}

Graph Graph::scaled(double factor) const {
  std::vector<Edge> out(edges_.begin(), edges_.end());
  for (Edge& e : out) e.w *= factor;
  return Graph(n_, std::move(out));
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_vertices() == b.num_vertices() && a.canonical_edges() == b.canonical_edges();
}

Graph build_graph(std::size_t n, std::vector<Edge> edges) { return Graph(n, std::move(edges)); }

// --- NodeSet ---------------------------------------------------------------

NodeSet::NodeSet(std::vector<bool> mask) : mask_(std::move(mask)) {
  count_ = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

NodeSet::NodeSet(std::size_t n, std::span<const Vertex> members) : mask_(n, false) {
  for (Vertex v : members) {
    if (v >= n) throw ValidationError("node set member out of range: " + std::to_string(v));
    if (!mask_[v]) {
      mask_[v] = true;
      ++count_;
    }
  }
}

NodeSet NodeSet::from_mask(const std::vector<bool>& mask) { return NodeSet(mask); }

std::vector<Vertex> NodeSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (mask_[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

NodeSet NodeSet::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t v = 0; v < mask_.size(); ++v) m[v] = !mask_[v];
  return NodeSet(std::move(m));
}

Vector NodeSet::indicator() const {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(mask_.size()));
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (mask_[v]) x[static_cast<Eigen::Index>(v)] = 1.0;
  }
  return x;
}

double NodeSet::volume(const Graph& g) const {
  double vol = 0.0;
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (mask_[v]) vol += g.degree(static_cast<Vertex>(v));
  }
  return vol;
}

// --- partition objectives --------------------------------------------------

double cut_weight(const Graph& g, const NodeSet& s) {
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) != s.contains(e.v)) cut += e.w;
  }
  return cut;
}

PartitionScore partition_quality(const Graph& g, const NodeSet& s) {
  if (s.universe() != g.num_vertices()) {
    throw ValidationError("node set universe does not match graph size");
  }
  if (!s.proper()) throw ValidationError("cut set must be a proper nonempty subset");

  PartitionScore r;
  r.cut = cut_weight(g, s);
  r.vol_s = s.volume(g);
  r.vol_sbar = g.volume() - r.vol_s;
  const double size_s = static_cast<double>(s.size());
  const double size_sbar = static_cast<double>(g.num_vertices() - s.size());
  r.expansion_h = r.cut / std::min(size_s, size_sbar);
  r.sparsity = r.cut * static_cast<double>(g.num_vertices()) / (size_s * size_sbar);
  const double min_vol = std::min(r.vol_s, r.vol_sbar);
  const double inf = std::numeric_limits<double>::infinity();
  r.conductance_phi = min_vol > 0.0 ? r.cut / min_vol : inf;
  r.ncut = (r.vol_s > 0.0 && r.vol_sbar > 0.0) ? r.cut / r.vol_s + r.cut / r.vol_sbar : inf;
  return r;
}

std::vector<int> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<int> label(n, -1);
  int next = 0;
  std::deque<Vertex> queue;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    label[start] = next;
    queue.push_back(static_cast<Vertex>(start));
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (const Neighbor& nb : g.neighbors(u)) {
        if (label[nb.vertex] < 0) {
          label[nb.vertex] = next;
          queue.push_back(nb.vertex);
        }
      }
    }
    ++next;
  }
  return label;
}

int num_components(const Graph& g) {
  const auto labels = connected_components(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const Graph& g) { return num_components(g) == 1; }

Matrix laplacian(const Graph& g, LaplacianKind kind) {
  const Matrix a = g.adjacency_matrix();
  const Vector& d = g.degrees();
  const auto n = a.rows();
  if (kind != LaplacianKind::kCombinatorial && g.has_isolated_vertex()) {
    throw DegenerateDegree("normalized Laplacian needs every vertex to have positive degree");
  }
  switch (kind) {
    case LaplacianKind::kCombinatorial: {
      Matrix l = -a;
      l.diagonal() += d;
      return l;
    }
    case LaplacianKind::kNormalizedSymmetric: {
      const Vector inv_sqrt = d.cwiseSqrt().cwiseInverse();
      return Matrix::Identity(n, n) - inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
    }
    case LaplacianKind::kRandomWalk:
      return Matrix::Identity(n, n) - d.cwiseInverse().asDiagonal() * a;
  }
  return {};
}

Matrix normalized_adjacency(const Graph& g) {
  if (g.has_isolated_vertex()) {
    throw DegenerateDegree("normalized adjacency needs every vertex to have positive degree");
  }
  const Vector inv_sqrt = g.degrees().cwiseSqrt().cwiseInverse();
  return inv_sqrt.asDiagonal() * g.adjacency_matrix() * inv_sqrt.asDiagonal();
}

}  // namespace specgraph
