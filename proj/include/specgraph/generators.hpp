#pragma once

#include <cstdint>
#include <string_view>

#include "specgraph/graph.hpp"

namespace specgraph {

enum class Family {
  kPath,         // path(n), n >= 1
  kCycle,        // cycle(n), n >= 3
  kGrid2d,       // grid2d(rows, cols), rows, cols >= 1
  kComplete,     // complete(n), n >= 1
  kStar,         // star(n): center 0 plus n-1 leaves, n >= 2
  kHypercube,    // hypercube(dim): 2^dim vertices, dim >= 1
  kBinaryTree,   // binary_tree(n): heap-ordered, n >= 1
  kDumbbell,     // dumbbell(k): two K_k joined by one edge, k >= 2
  kLollipop,     // lollipop(k, l): K_k with a path of l extra vertices, k >= 2, l >= 1
};

Family family_from_name(std::string_view name);
std::string_view family_name(Family f);

// Deterministic unweighted graph. `size2` is used by grid2d (cols) and
// lollipop (tail length) only.
Graph gen_family(Family family, std::size_t size, std::size_t size2 = 0);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph grid2d_graph(std::size_t rows, std::size_t cols);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t n);
Graph hypercube_graph(std::size_t dim);
Graph binary_tree_graph(std::size_t n);
Graph dumbbell_graph(std::size_t k);
Graph lollipop_graph(std::size_t k, std::size_t tail);

// Erdos-Renyi G(n, p): every pair independently with probability p.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

// Uniform-ish random d-regular graph by configuration-model pairing with a
// full restart on any self-loop or repeated pair.
inline constexpr int kRegularRetryCap = 1000;
Graph gen_d_regular(std::size_t n, std::size_t d, std::uint64_t seed);

// Cycle on n vertices plus a random perfect matching that avoids ring edges,
// giving a 3-regular small-world graph. n must be even and >= 6.
Graph gen_ring_plus_matching(std::size_t n, std::uint64_t seed);

}  // namespace specgraph
