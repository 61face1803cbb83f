#include "graphmark/error.hpp"

namespace graphmark {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidEps: return "InvalidEps";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::TargetTooSmall: return "TargetTooSmall";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::NegativeLength: return "NegativeLength";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::DisconnectedForDelta: return "DisconnectedForDelta";
    case ErrorCode::DisconnectedForSpanningTree: return "DisconnectedForSpanningTree";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::NegativeEntries: return "NegativeEntries";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PointOutsideWindow: return "PointOutsideWindow";
    case ErrorCode::NonpositiveR: return "NonpositiveR";
    case ErrorCode::TooFewMarks: return "TooFewMarks";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::BoundaryDistanceOutOfRange: return "BoundaryDistanceOutOfRange";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::DegenerateEnsemble: return "DegenerateEnsemble";
    case ErrorCode::TooFewPermutations: return "TooFewPermutations";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace graphmark
