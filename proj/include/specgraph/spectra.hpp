#pragma once

#include <cstdint>
#include <vector>

#include "specgraph/eigen.hpp"
#include "specgraph/graph.hpp"

namespace specgraph {

// Eigensystem of the chosen Laplacian. For kRandomWalk the columns are the
// generalized eigenvectors of L u = lambda D u (D-orthonormal), obtained from
// the symmetric normalized Laplacian via u = D^{-1/2} v.
EigenSystem laplacian_eigensystem(const Graph& g, LaplacianKind kind);

struct FiedlerResult {
  double lambda2 = 0.0;
  Vector vector;
  // Set when the graph is disconnected: lambda2 is 0 and `vector` is the
  // centred indicator of the component containing vertex 0.
  bool disconnected = false;
};

FiedlerResult fiedler(const Graph& g, LaplacianKind kind = LaplacianKind::kCombinatorial);

struct SweepResult {
  std::vector<Vertex> order;
  std::size_t best_index = 0;  // prefix length
  NodeSet best_set;
  double best_conductance = 0.0;
  std::vector<double> profile;  // conductance of prefixes of length 1..n-1
};

// Sorts vertices by x ascending (ties by id) and returns the
// minimum-conductance prefix. best_set is that prefix or its complement,
// whichever has the smaller volume.
SweepResult sweep_cut(const Graph& g, const Vector& x);

struct CheegerReport {
  double lambda2 = 0.0;    // of the normalized Laplacian
  double sweep_phi = 0.0;  // conductance of the sweep over D^{-1/2} v_2
  double lower = 0.0;      // lambda2 / 2
  double upper = 0.0;      // sqrt(2 lambda2)
  SweepResult sweep;
};

inline constexpr double kCheegerTol = 1e-9;

// Throws InvariantViolation if lower <= sweep_phi <= upper fails.
CheegerReport cheeger_report(const Graph& g);

struct ClusterLabels {
  std::vector<int> labels;
  int k = 0;
};

enum class ClusterVariant { kUnnormalized, kRandomWalk, kNormalizedRowNorm };

ClusterLabels spectral_cluster(const Graph& g, int k, ClusterVariant variant, std::uint64_t seed);

struct SpectralFacts {
  int num_zero_eigs = 0;
  bool has_bipartite_component = false;
  double lambda_max = 0.0;
};

inline constexpr double kZeroEigTol = 1e-8;

// Zero-multiplicity and bipartiteness read off the normalized Laplacian
// spectrum. Isolated vertices use the convention L_vv = 0.
SpectralFacts spectral_facts(const Graph& g);

// --- k-means --------------------------------------------------------------

inline constexpr int kKmeansMaxIter = 100;

// k-means++ seeding then Lloyd iterations until the assignment is a
// fixpoint. Labels are renumbered by first appearance, so equal partitions
// give equal label vectors.
ClusterLabels kmeans(const Matrix& points, int k, std::uint64_t seed);

}  // namespace specgraph
