#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace specgraph {

using Vertex = std::uint32_t;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  double weight;
  std::size_t edge_id;
};

// Weighted undirected simple graph. Immutable once built; the constructor
// validates every invariant (no self loops, no duplicate pairs, positive
// weights, endpoints in range).
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id); }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  // Weighted degree.
  double degree(Vertex v) const { return degrees_[v]; }
  const Vector& degrees() const noexcept { return degrees_; }
  double volume() const noexcept { return volume_; }
  double total_weight() const noexcept { return volume_ / 2.0; }
  double min_degree() const;
  bool has_isolated_vertex() const { return min_degree() <= 0.0; }

  // Edge weight between u and v, or 0 if not adjacent. O(deg u).
  double weight(Vertex u, Vertex v) const;

  Matrix adjacency_matrix() const;

  // y = (D - A) x without forming the matrix.
  Vector apply_laplacian(const Vector& x) const;
  // y = A x.
  Vector apply_adjacency(const Vector& x) const;

  // Edge list with u < v, sorted lexicographically.
  std::vector<Edge> canonical_edges() const;

  // Same vertex set, every weight multiplied by factor > 0.
  Graph scaled(double factor) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  Vector degrees_;
  double volume_ = 0.0;
};

bool operator==(const Graph& a, const Graph& b);

// Validating factory; identical to the constructor, spelled as a function.
Graph build_graph(std::size_t n, std::vector<Edge> edges);

// Subset of vertices of a graph with n vertices.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::size_t n, std::span<const Vertex> members);
  NodeSet(std::size_t n, std::initializer_list<Vertex> members)
      : NodeSet(n, std::span<const Vertex>(members.begin(), members.size())) {}
  static NodeSet from_mask(const std::vector<bool>& mask);

  std::size_t universe() const noexcept { return mask_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool full() const noexcept { return count_ == mask_.size(); }
  bool proper() const noexcept { return !empty() && !full(); }
  bool contains(Vertex v) const { return mask_.at(v); }
  const std::vector<bool>& mask() const noexcept { return mask_; }

  std::vector<Vertex> members() const;
  NodeSet complement() const;
  Vector indicator() const;
  double volume(const Graph& g) const;

 private:
  explicit NodeSet(std::vector<bool> mask);
  std::vector<bool> mask_;
  std::size_t count_ = 0;
};

struct PartitionScore {
  double cut = 0.0;
  double vol_s = 0.0;
  double vol_sbar = 0.0;
  double expansion_h = 0.0;      // cut / min(|S|, |S̄|)
  double sparsity = 0.0;         // cut * n / (|S| |S̄|)
  double conductance_phi = 0.0;  // cut / min(vol S, vol S̄)
  double ncut = 0.0;             // cut / vol S + cut / vol S̄
};

double cut_weight(const Graph& g, const NodeSet& s);
PartitionScore partition_quality(const Graph& g, const NodeSet& s);

// Labels 0..c-1 assigned breadth-first from the lowest unvisited vertex.
std::vector<int> connected_components(const Graph& g);
int num_components(const Graph& g);
bool is_connected(const Graph& g);

enum class LaplacianKind { kCombinatorial, kNormalizedSymmetric, kRandomWalk };

// Dense Laplacian. Normalized kinds need min degree > 0.
Matrix laplacian(const Graph& g, LaplacianKind kind = LaplacianKind::kCombinatorial);

// Normalized adjacency D^{-1/2} A D^{-1/2}.
Matrix normalized_adjacency(const Graph& g);

}  // namespace specgraph
