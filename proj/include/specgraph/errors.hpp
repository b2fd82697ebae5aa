#pragma once

#include <stdexcept>
#include <string>

namespace specgraph {

// Bad input: malformed graph, out-of-range parameter, infeasible request.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked mathematical invariant did not hold. This is a library defect
// (or a numerically hopeless input), never a user error. Exit code 2.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphErrorKind {
  kSelfLoop,
  kDuplicateEdge,
  kVertexOutOfRange,
  kNonPositiveWeight,
  kEmptyGraph,
};

class GraphError : public ValidationError {
 public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : ValidationError(what), kind_(kind) {}
  GraphErrorKind kind() const noexcept { return kind_; }

 private:
  GraphErrorKind kind_;
};

// Raised by operations whose result needs a connected graph.
class DisconnectedGraph : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Normalized quantities need every vertex to have positive degree.
class DegenerateDegree : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace specgraph
