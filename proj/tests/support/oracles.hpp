#pragma once

// Reference computations for tests. Everything here goes straight through
// Eigen's dense decompositions and the raw edge list, never through the
// library's own spectral or solver code.

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "specgraph/graph.hpp"

namespace oracle {

using specgraph::Graph;
using specgraph::Matrix;
using specgraph::Vector;

inline Matrix adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Matrix a = Matrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) += e.w;
    a(e.v, e.u) += e.w;
  }
  return a;
}

inline Vector degrees(const Graph& g) { return adjacency(g).rowwise().sum(); }

inline Matrix comb_laplacian(const Graph& g) {
  Matrix a = adjacency(g);
  Matrix l = -a;
  l.diagonal() += a.rowwise().sum();
  return l;
}

inline Matrix norm_laplacian(const Graph& g) {
  const Vector s = degrees(g).cwiseSqrt().cwiseInverse();
  Matrix l = -(s.asDiagonal() * adjacency(g) * s.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

inline Vector eigenvalues(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

inline Eigen::SelfAdjointEigenSolver<Matrix> eigensystem(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m);
}

// Pseudo-inverse of a connected-graph Laplacian: (L + J/n)^{-1} - J/n.
inline Matrix laplacian_pinv(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const Matrix j = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  return Matrix((comb_laplacian(g) + j).fullPivLu().inverse()) - j;
}

// pi = alpha s + (1 - alpha) ((1 - step) I + step A D^{-1}) pi.
inline Vector ppr(const Graph& g, double alpha, const Vector& s, double step) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const Matrix w = (1.0 - step) * Matrix::Identity(n, n) +
                   step * adjacency(g) * degrees(g).cwiseInverse().asDiagonal();
  const Matrix sys = Matrix::Identity(n, n) - (1.0 - alpha) * w;
  return sys.fullPivLu().solve(alpha * s);
}

inline double l_norm(const Graph& g, const Vector& x) {
  return std::sqrt(std::max(0.0, x.dot(comb_laplacian(g) * x)));
}

// Union-find connectivity, optionally ignoring one edge id.
inline bool connected(const Graph& g, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = g.num_vertices();
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    if (id == skip) continue;
    const auto a = find(g.edge(id).u);
    const auto b = find(g.edge(id).v);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts == 1;
}

inline double cut(const Graph& g, const std::vector<bool>& in) {
  double c = 0.0;
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) c += e.w;
  }
  return c;
}

inline double volume(const Graph& g, const std::vector<bool>& in) {
  const Vector d = degrees(g);
  double v = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) v += d[static_cast<Eigen::Index>(i)];
  }
  return v;
}

inline double conductance(const Graph& g, const std::vector<bool>& in) {
  const double vs = volume(g, in);
  const double total = degrees(g).sum();
  return cut(g, in) / std::min(vs, total - vs);
}

// Two-class disagreement up to swapping the labels.
inline double two_class_error(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += (a[i] == b[i]) ? 1 : 0;
  const double n = static_cast<double>(a.size());
  return std::min(static_cast<double>(same), n - static_cast<double>(same)) / n;
}

}  // namespace oracle
