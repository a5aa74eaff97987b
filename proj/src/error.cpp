#include "quadratis/error.hpp"

namespace quadratis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::NoMovesAvailable: return "NoMovesAvailable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::StateNotInSpace: return "StateNotInSpace";
    case ErrorCode::IncompleteGraph: return "IncompleteGraph";
    case ErrorCode::Unsolvable: return "Unsolvable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownPuzzle: return "UnknownPuzzle";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::InvalidMove: return "InvalidMove";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace quadratis
