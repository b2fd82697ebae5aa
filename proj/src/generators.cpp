#include "specgraph/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

Vertex vid(std::size_t v) { return static_cast<Vertex>(v); }

void add_clique(std::vector<Edge>& edges, std::size_t first, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) edges.push_back({vid(first + i), vid(first + j), 1.0});
  }
}

// Pairs a shuffled stub list; returns false if the pairing is not simple.
bool pair_stubs(std::vector<Vertex>& stubs, std::mt19937_64& rng, std::set<std::pair<Vertex, Vertex>>& pairs) {
  std::shuffle(stubs.begin(), stubs.end(), rng);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    Vertex a = stubs[i], b = stubs[i + 1];
    if (a == b) return false;
    if (!pairs.emplace(std::min(a, b), std::max(a, b)).second) return false;
  }
  return true;
}

}  // namespace

Family family_from_name(std::string_view name) {
  if (name == "path") return Family::kPath;
  if (name == "cycle") return Family::kCycle;
  if (name == "grid2d") return Family::kGrid2d;
  if (name == "complete") return Family::kComplete;
  if (name == "star") return Family::kStar;
  if (name == "hypercube") return Family::kHypercube;
  if (name == "binary_tree") return Family::kBinaryTree;
  if (name == "dumbbell") return Family::kDumbbell;
  if (name == "lollipop") return Family::kLollipop;
  throw ValidationError("unknown graph family: " + std::string(name));
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kPath: return "path";
    case Family::kCycle: return "cycle";
    case Family::kGrid2d: return "grid2d";
    case Family::kComplete: return "complete";
    case Family::kStar: return "star";
    case Family::kHypercube: return "hypercube";
    case Family::kBinaryTree: return "binary_tree";
    case Family::kDumbbell: return "dumbbell";
    case Family::kLollipop: return "lollipop";
  }
  return "unknown";
}

Graph path_graph(std::size_t n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({vid(i), vid(i + 1), 1.0});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({vid(i), vid((i + 1) % n), 1.0});
  return Graph(n, std::move(edges));
}

Graph grid2d_graph(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "grid2d needs rows, cols >= 1");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return vid(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  require(n >= 1, "complete needs n >= 1");
  std::vector<Edge> edges;
  add_clique(edges, 0, n);
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t n) {
  require(n >= 2, "star needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, vid(i), 1.0});
  return Graph(n, std::move(edges));
}

Graph hypercube_graph(std::size_t dim) {
  require(dim >= 1 && dim <= 20, "hypercube needs 1 <= dim <= 20");
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t u = v ^ (std::size_t{1} << b);
      if (v < u) edges.push_back({vid(v), vid(u), 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

Graph binary_tree_graph(std::size_t n) {
  require(n >= 1, "binary_tree needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({vid((v - 1) / 2), vid(v), 1.0});
  return Graph(n, std::move(edges));
}

Graph dumbbell_graph(std::size_t k) {
  require(k >= 2, "dumbbell needs k >= 2");
  std::vector<Edge> edges;
  add_clique(edges, 0, k);
  add_clique(edges, k, k);
  edges.push_back({vid(k - 1), vid(k), 1.0});
  return Graph(2 * k, std::move(edges));
}

Graph lollipop_graph(std::size_t k, std::size_t tail) {
  require(k >= 2 && tail >= 1, "lollipop needs k >= 2 and tail >= 1");
  std::vector<Edge> edges;
  add_clique(edges, 0, k);
  for (std::size_t i = 0; i < tail; ++i) edges.push_back({vid(k - 1 + i), vid(k + i), 1.0});
  return Graph(k + tail, std::move(edges));
}

Graph gen_family(Family family, std::size_t size, std::size_t size2) {
  switch (family) {
    case Family::kPath: return path_graph(size);
    case Family::kCycle: return cycle_graph(size);
    case Family::kGrid2d: return grid2d_graph(size, size2 == 0 ? size : size2);
    case Family::kComplete: return complete_graph(size);
    case Family::kStar: return star_graph(size);
    case Family::kHypercube: return hypercube_graph(size);
    case Family::kBinaryTree: return binary_tree_graph(size);
    case Family::kDumbbell: return dumbbell_graph(size);
    case Family::kLollipop: return lollipop_graph(size, size2 == 0 ? size : size2);
  }
  throw ValidationError("unknown family");
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 1, "gnp needs n >= 1");
  require(p >= 0.0 && p <= 1.0, "gnp needs 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unif(rng) < p) edges.push_back({vid(i), vid(j), 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_d_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  require(d < n, "d_regular needs d < n");
  require((n * d) % 2 == 0, "d_regular needs n*d even");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs;
  stubs.reserve(n * d);
  for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), d, vid(v));

  for (int attempt = 0; attempt < kRegularRetryCap; ++attempt) {
    std::set<std::pair<Vertex, Vertex>> pairs;
    if (!pair_stubs(stubs, rng, pairs)) continue;
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) edges.push_back({a, b, 1.0});
    return Graph(n, std::move(edges));
  }
  throw ValidationError("d_regular: no simple pairing within " + std::to_string(kRegularRetryCap) +
                        " attempts");
}

Graph gen_ring_plus_matching(std::size_t n, std::uint64_t seed) {
  require(n >= 6 && n % 2 == 0, "ring_plus_matching needs even n >= 6");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs(n);
  for (std::size_t v = 0; v < n; ++v) stubs[v] = vid(v);

  for (int attempt = 0; attempt < kRegularRetryCap; ++attempt) {
    std::set<std::pair<Vertex, Vertex>> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.emplace(std::min(vid(i), vid((i + 1) % n)), std::max(vid(i), vid((i + 1) % n)));
    if (!pair_stubs(stubs, rng, pairs)) continue;
    std::vector<Edge> edges;
    for (const auto& [a, b] : pairs) edges.push_back({a, b, 1.0});
    return Graph(n, std::move(edges));
  }
  throw ValidationError("ring_plus_matching: no simple matching found");
}

}  // namespace specgraph
