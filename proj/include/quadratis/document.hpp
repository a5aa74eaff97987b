#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quadratis/puzzle.hpp"

namespace quadratis {

struct SquarePlacement {
  SquareId id = 0;
  int x = 0;
  int y = 0;

  friend bool operator==(const SquarePlacement&, const SquarePlacement&) = default;
};

struct ExplicitPasting {
  Permutation right;
  Permutation up;

  friend bool operator==(const ExplicitPasting&, const ExplicitPasting&) = default;
};

// On-disk puzzle description (JSON, UTF-8). A missing explicit pasting means
// the literal "standard" pasting of the square positions.
struct PuzzleDocument {
  std::string name;
  std::vector<SquarePlacement> squares;
  std::optional<ExplicitPasting> pasting;
  std::vector<ColorEntry> colors;
  std::vector<int> home;

  friend bool operator==(const PuzzleDocument&, const PuzzleDocument&) = default;
};

// Throws Error{ParseError} with line or field context.
PuzzleDocument parse_puzzle_document(std::string_view text);
PuzzleDocument puzzle_document_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PuzzleDocument& doc);

// Throws Error{ValidationError} naming the broken invariant.
Puzzle puzzle_from_document(const PuzzleDocument& doc);
// Writes "standard" when the board equals the standard pasting of its placement.
PuzzleDocument document_from_puzzle(const Puzzle& puzzle);

Puzzle load_puzzle(const std::filesystem::path& path);
void save_puzzle(const Puzzle& puzzle, const std::filesystem::path& path);

// Document plus the movable cycles per axis, for clients mapping squares to moves.
nlohmann::json puzzle_descriptor(const Puzzle& puzzle);

nlohmann::json to_json(const MoveSpec& mv);
// Throws Error{ValidationError} naming the offending field.
MoveSpec move_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Configuration& cfg);
Configuration configuration_from_json(const nlohmann::json& j);

}  // namespace quadratis
