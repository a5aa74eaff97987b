#include "quadratis/puzzle.hpp"

#include <algorithm>
#include <set>

#include "quadratis/error.hpp"
#include "quadratis/rng.hpp"

namespace quadratis {

ColorScheme::ColorScheme(std::vector<ColorEntry> colors) : colors_(std::move(colors)) {
  if (colors_.empty()) throw Error(ErrorCode::ValidationError, "color scheme needs at least one color", "colors");
  if (colors_.size() > kMaxColors) {
    throw Error(ErrorCode::ValidationError, "color scheme supports at most 255 colors", "colors");
  }
  std::set<std::string> names;
  for (const ColorEntry& c : colors_) {
    if (c.count == 0) throw Error(ErrorCode::ValidationError, "color '" + c.name + "' must have a positive count", "colors");
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::ValidationError, "duplicate color name '" + c.name + "'", "colors");
    }
  }
}

ColorScheme ColorScheme::from_counts(std::span<const std::size_t> counts) {
  std::vector<ColorEntry> colors;
  for (std::size_t i = 0; i < counts.size(); ++i) colors.push_back({"c" + std::to_string(i), "#808080", counts[i]});
  return ColorScheme(std::move(colors));
}

std::size_t ColorScheme::total() const {
  std::size_t sum = 0;
  for (const ColorEntry& c : colors_) sum += c.count;
  return sum;
}

std::vector<std::size_t> ColorScheme::counts() const {
  std::vector<std::size_t> out;
  for (const ColorEntry& c : colors_) out.push_back(c.count);
  return out;
}

std::string_view to_string(Axis axis) { return axis == Axis::Horizontal ? "horizontal" : "vertical"; }
std::string_view to_string(Direction direction) { return direction == Direction::Forward ? "forward" : "backward"; }

MoveSpec reverse(const MoveSpec& mv) {
  return {mv.axis, mv.cycle_id, mv.direction == Direction::Forward ? Direction::Backward : Direction::Forward};
}

std::vector<Cycle> movable_cycles(const Board& board, Axis axis) {
  const auto& all = axis == Axis::Horizontal ? board.horizontal_cycles() : board.vertical_cycles();
  std::vector<Cycle> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), [](const Cycle& c) { return c.size() >= 2; });
  return out;
}

std::vector<MoveSpec> enumerate_moves(const Board& board) {
  std::vector<MoveSpec> out;
  for (Axis axis : {Axis::Horizontal, Axis::Vertical}) {
    const auto cyc = movable_cycles(board, axis);
    for (std::size_t id = 0; id < cyc.size(); ++id) {
      out.push_back({axis, id, Direction::Forward});
      if (cyc[id].size() >= 3) out.push_back({axis, id, Direction::Backward});
    }
  }
  return out;
}

namespace {

std::vector<SquareId> push_path(const Cycle& cycle, Direction direction) {
  std::vector<SquareId> path(cycle.begin(), cycle.end());
  if (direction == Direction::Backward) std::reverse(path.begin() + 1, path.end());
  return path;
}

void shift_along(std::span<const ColorIndex> in, std::span<ColorIndex> out, std::span<const SquareId> path) {
  const std::size_t len = path.size();
  const ColorIndex last = in[path[len - 1]];
  for (std::size_t k = len - 1; k > 0; --k) out[path[k]] = in[path[k - 1]];
  out[path[0]] = last;
}

}  // namespace

Configuration apply_move(const Configuration& cfg, const MoveSpec& mv, const Board& board) {
  if (cfg.size() != board.size()) {
    throw Error(ErrorCode::ValidationError, "configuration length does not match the board", "colors");
  }
  const auto cyc = movable_cycles(board, mv.axis);
  if (mv.cycle_id >= cyc.size()) {
    throw Error(ErrorCode::InvalidMove,
                "cycle_id " + std::to_string(mv.cycle_id) + " out of range for " + std::string(to_string(mv.axis)) +
                    " moves (" + std::to_string(cyc.size()) + " cycles)",
                "cycle_id");
  }
  Configuration out = cfg;
  const auto path = push_path(cyc[mv.cycle_id], mv.direction);
  shift_along(cfg.colors, out.colors, path);
  return out;
}

MoveTable::MoveTable(const Board& board) : moves_(enumerate_moves(board)) {
  const auto horizontal = movable_cycles(board, Axis::Horizontal);
  const auto vertical = movable_cycles(board, Axis::Vertical);
  for (const MoveSpec& mv : moves_) {
    const Cycle& c = (mv.axis == Axis::Horizontal ? horizontal : vertical)[mv.cycle_id];
    paths_.push_back(push_path(c, mv.direction));
    longest_ = std::max(longest_, c.size());
  }
  for (const MoveSpec& mv : moves_) {
    const std::size_t len = paths_[index_of(mv)].size();
    inverse_.push_back(len == 2 ? index_of(mv) : index_of(reverse(mv)));
  }
}

std::size_t MoveTable::index_of(const MoveSpec& mv) const {
  auto it = std::lower_bound(moves_.begin(), moves_.end(), mv);
  if (it != moves_.end() && *it == mv) return static_cast<std::size_t>(it - moves_.begin());
  // A 2-cycle has one MoveSpec; its backward form denotes the same move.
  if (mv.direction == Direction::Backward) {
    MoveSpec fwd = reverse(mv);
    it = std::lower_bound(moves_.begin(), moves_.end(), fwd);
    if (it != moves_.end() && *it == fwd) return static_cast<std::size_t>(it - moves_.begin());
  }
  throw Error(ErrorCode::InvalidMove,
              "no " + std::string(to_string(mv.axis)) + " move with cycle_id " + std::to_string(mv.cycle_id),
              "cycle_id");
}

void MoveTable::apply(std::span<const ColorIndex> in, std::span<ColorIndex> out, std::size_t index) const {
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  shift_along(in, out, paths_[index]);
}

bool MoveTable::fixes(std::span<const ColorIndex> colors, std::size_t index) const {
  const auto& path = paths_[index];
  for (std::size_t k = 1; k < path.size(); ++k)
    if (colors[path[k]] != colors[path[0]]) return false;
  return true;
}

void validate_configuration(const Configuration& cfg, const ColorScheme& scheme, std::size_t num_squares) {
  if (cfg.size() != num_squares) {
    throw Error(ErrorCode::ValidationError,
                "configuration has " + std::to_string(cfg.size()) + " entries, board has " +
                    std::to_string(num_squares) + " squares",
                "home");
  }
  std::vector<std::size_t> seen(scheme.num_colors(), 0);
  for (ColorIndex c : cfg.colors) {
    if (c >= scheme.num_colors()) {
      throw Error(ErrorCode::ValidationError, "color index " + std::to_string(c) + " out of range", "home");
    }
    ++seen[c];
  }
  for (std::size_t c = 0; c < seen.size(); ++c) {
    if (seen[c] != scheme.colors()[c].count) {
      throw Error(ErrorCode::ValidationError,
                  "color count invariant violated: color '" + scheme.colors()[c].name + "' appears " +
                      std::to_string(seen[c]) + " times, scheme requires " +
                      std::to_string(scheme.colors()[c].count),
                  "home");
    }
  }
}

Puzzle::Puzzle(std::string name, Board board, ColorScheme scheme, Configuration home)
    : name_(std::move(name)),
      board_(std::move(board)),
      scheme_(std::move(scheme)),
      home_(std::move(home)),
      moves_(board_) {
  if (scheme_.total() != board_.size()) {
    throw Error(ErrorCode::CountMismatch,
                "color count invariant violated: counts sum to " + std::to_string(scheme_.total()) +
                    " but the board has " + std::to_string(board_.size()) + " squares",
                "colors");
  }
  validate_configuration(home_, scheme_, board_.size());
}

ShuffleResult shuffle(const Puzzle& puzzle, std::size_t num_moves, std::uint64_t seed, bool forbid_undo) {
  ShuffleResult result{puzzle.home(), {}};
  if (num_moves == 0) return result;
  const MoveTable& table = puzzle.moves();
  if (table.size() == 0) throw Error(ErrorCode::NoMovesAvailable, "board has no cycle of length >= 2");

  Rng rng(seed);
  std::vector<ColorIndex> scratch(result.state.colors);
  std::size_t previous = table.size();
  for (std::size_t step = 0; step < num_moves; ++step) {
    std::size_t pick;
    const bool exclude = forbid_undo && previous < table.size() && table.size() > 1;
    if (exclude) {
      const std::size_t banned = table.inverse_index(previous);
      pick = rng.below(table.size() - 1);
      if (pick >= banned) ++pick;
    } else {
      pick = rng.below(table.size());
    }
    table.apply(scratch, scratch, pick);
    result.moves.push_back(table.move(pick));
    previous = pick;
  }
  result.state.colors = std::move(scratch);
  return result;
}

bool is_solved(const Configuration& cfg, const Puzzle& puzzle) { return cfg == puzzle.home(); }

BigInt multinomial(std::span<const std::size_t> counts) {
  // Product of binomials C(n_1 + ... + n_k, n_k), built incrementally.
  BigInt result = 1;
  std::size_t placed = 0;
  for (std::size_t count : counts) {
    for (std::size_t j = 1; j <= count; ++j) {
      result *= placed + j;
      result /= j;
    }
    placed += count;
  }
  return result;
}

BigInt count_all_colorings(const Board& board, const ColorScheme& scheme) {
  if (scheme.total() != board.size()) {
    throw Error(ErrorCode::CountMismatch,
                "color counts sum to " + std::to_string(scheme.total()) + " but the board has " +
                    std::to_string(board.size()) + " squares",
                "colors");
  }
  const auto counts = scheme.counts();
  return multinomial(counts);
}

}  // namespace quadratis
