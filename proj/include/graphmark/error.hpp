#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphmark {

enum class ErrorCode {
  // graph_core
  InvalidGraph,
  InvalidEps,
  SingularSystem,
  DisconnectedGraph,
  NotSymmetric,
  TargetTooSmall,
  InvalidEdge,
  NegativeLength,
  // graph_metrics
  OrderMismatch,
  DisconnectedForDelta,
  DisconnectedForSpanningTree,
  InvalidParam,
  NegativeEntries,
  // point_pattern
  InvalidWindow,
  InvalidPattern,
  EmptyPattern,
  TooFewPoints,
  IndexOutOfRange,
  PointOutsideWindow,
  // estimators
  NonpositiveR,
  TooFewMarks,
  // simulate
  InvalidP,
  BoundaryDistanceOutOfRange,
  NotBinary,
  // envelopes
  DegenerateEnsemble,
  TooFewPermutations,
  // plumbing
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; the code names the
// violated precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphmark
