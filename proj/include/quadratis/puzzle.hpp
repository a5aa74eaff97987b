#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadratis/surface.hpp"

namespace quadratis {

using BigInt = boost::multiprecision::cpp_int;
using ColorIndex = std::uint8_t;

struct ColorEntry {
  std::string name;
  std::string rgb;
  std::size_t count = 0;

  friend bool operator==(const ColorEntry&, const ColorEntry&) = default;
};

class ColorScheme {
 public:
  static constexpr std::size_t kMaxColors = 255;

  explicit ColorScheme(std::vector<ColorEntry> colors);

  // Unnamed colors c0, c1, ... with the given counts.
  static ColorScheme from_counts(std::span<const std::size_t> counts);

  std::size_t num_colors() const { return colors_.size(); }
  std::size_t total() const;
  const std::vector<ColorEntry>& colors() const { return colors_; }
  std::vector<std::size_t> counts() const;

  friend bool operator==(const ColorScheme&, const ColorScheme&) = default;

 private:
  std::vector<ColorEntry> colors_;
};

// Color index per square id. Same-colored squares are indistinguishable, so
// equality of these arrays is equality of configurations.
struct Configuration {
  std::vector<ColorIndex> colors;

  std::size_t size() const { return colors.size(); }
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

enum class Axis : std::uint8_t { Horizontal, Vertical };
enum class Direction : std::uint8_t { Forward, Backward };

std::string_view to_string(Axis axis);
std::string_view to_string(Direction direction);

// A cyclic shift along one movable cycle (length >= 2) of a pasting
// permutation. Forward moves the color on square i to right[i] (or up[i]).
struct MoveSpec {
  Axis axis = Axis::Horizontal;
  std::size_t cycle_id = 0;
  Direction direction = Direction::Forward;

  friend auto operator<=>(const MoveSpec&, const MoveSpec&) = default;
};

MoveSpec reverse(const MoveSpec& mv);

// Cycles of length >= 2 along one axis, ordered by smallest member.
std::vector<Cycle> movable_cycles(const Board& board, Axis axis);

// One MoveSpec per direction for cycles of length >= 3, a single forward
// MoveSpec for 2-cycles. Horizontal moves first, then vertical.
std::vector<MoveSpec> enumerate_moves(const Board& board);

// Throws Error{InvalidMove} when cycle_id is out of range.
Configuration apply_move(const Configuration& cfg, const MoveSpec& mv, const Board& board);

// Precomputed move list of a board for repeated application in searches.
class MoveTable {
 public:
  explicit MoveTable(const Board& board);

  std::size_t size() const { return moves_.size(); }
  const std::vector<MoveSpec>& moves() const { return moves_; }
  const MoveSpec& move(std::size_t index) const { return moves_[index]; }
  // Squares visited by the move in push order.
  std::span<const SquareId> path(std::size_t index) const { return paths_[index]; }
  std::size_t inverse_index(std::size_t index) const { return inverse_[index]; }
  std::size_t index_of(const MoveSpec& mv) const;
  std::size_t longest_cycle() const { return longest_; }

  void apply(std::span<const ColorIndex> in, std::span<ColorIndex> out, std::size_t index) const;
  // Whether the move leaves the configuration unchanged.
  bool fixes(std::span<const ColorIndex> colors, std::size_t index) const;

 private:
  std::vector<MoveSpec> moves_;
  std::vector<std::vector<SquareId>> paths_;
  std::vector<std::size_t> inverse_;
  std::size_t longest_ = 0;
};

class Puzzle {
 public:
  Puzzle(std::string name, Board board, ColorScheme scheme, Configuration home);

  const std::string& name() const { return name_; }
  const Board& board() const { return board_; }
  const ColorScheme& scheme() const { return scheme_; }
  const Configuration& home() const { return home_; }
  const MoveTable& moves() const { return moves_; }

 private:
  std::string name_;
  Board board_;
  ColorScheme scheme_;
  Configuration home_;
  MoveTable moves_;
};

// Throws Error{ValidationError} unless cfg has the scheme's length and counts.
void validate_configuration(const Configuration& cfg, const ColorScheme& scheme, std::size_t num_squares);

struct ShuffleResult {
  Configuration state;
  std::vector<MoveSpec> moves;
};

ShuffleResult shuffle(const Puzzle& puzzle, std::size_t num_moves, std::uint64_t seed, bool forbid_undo = false);

bool is_solved(const Configuration& cfg, const Puzzle& puzzle);

// N! / (n_1! ... n_K!). Throws Error{CountMismatch} when the counts do not sum to N.
BigInt count_all_colorings(const Board& board, const ColorScheme& scheme);
BigInt multinomial(std::span<const std::size_t> counts);

}  // namespace quadratis
