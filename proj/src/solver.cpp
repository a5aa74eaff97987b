#include "quadratis/solver.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "quadratis/error.hpp"
#include "quadratis/state_code.hpp"

namespace quadratis {

namespace {

using Clock = std::chrono::steady_clock;
using Layers = std::vector<std::vector<StateCode>>;
using DepthMap = std::unordered_map<StateCode, std::uint32_t>;

struct SearchSide {
  DepthMap depth;
  Layers layers;
};

}  // namespace

Heuristic mismatch_heuristic(const Puzzle& puzzle) {
  const std::size_t longest = std::max<std::size_t>(puzzle.moves().longest_cycle(), 1);
  return [home = puzzle.home().colors, longest](std::span<const ColorIndex> colors) {
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < home.size(); ++i) mismatched += colors[i] != home[i];
    return (mismatched + longest - 1) / longest;
  };
}

Solution solve_bfs(const Puzzle& puzzle, const Configuration& start, std::size_t budget) {
  const auto started = Clock::now();
  validate_configuration(start, puzzle.scheme(), puzzle.board().size());
  Solution solution;
  solution.optimal = true;
  if (start == puzzle.home()) {
    solution.wall_time = Clock::now() - started;
    return solution;
  }

  const MoveTable& table = puzzle.moves();
  const StateCodec codec(puzzle.board().size(), puzzle.scheme().num_colors());
  const std::size_t n = puzzle.board().size();
  std::vector<ColorIndex> current(n);
  std::vector<ColorIndex> next(n);

  SearchSide forward;
  SearchSide backward;
  forward.depth.emplace(codec.encode(start), 0);
  forward.layers.push_back({codec.encode(start)});
  backward.depth.emplace(codec.encode(puzzle.home()), 0);
  backward.layers.push_back({codec.encode(puzzle.home())});

  std::size_t best = std::numeric_limits<std::size_t>::max();
  while (best == std::numeric_limits<std::size_t>::max()) {
    const bool grow_forward = forward.layers.back().size() <= backward.layers.back().size();
    SearchSide& side = grow_forward ? forward : backward;
    const SearchSide& other = grow_forward ? backward : forward;
    if (side.layers.back().empty()) throw Error(ErrorCode::Unsolvable, "start state is not in the puzzle space of home");

    const auto level = static_cast<std::uint32_t>(side.layers.size());
    std::vector<StateCode> layer;
    for (const StateCode& code : side.layers.back()) {
      ++solution.nodes_expanded;
      current = codec.decode(code).colors;
      for (std::size_t m = 0; m < table.size(); ++m) {
        if (table.fixes(current, m)) continue;
        table.apply(current, next, m);
        StateCode key = codec.encode(next);
        if (side.depth.contains(key)) continue;
        if (auto hit = other.depth.find(key); hit != other.depth.end()) best = std::min<std::size_t>(best, level + hit->second);
        side.depth.emplace(key, level);
        layer.push_back(std::move(key));
      }
      if (forward.depth.size() + backward.depth.size() > budget) {
        throw Error(ErrorCode::BudgetExceeded, "bidirectional search exceeded " + std::to_string(budget) + " states");
      }
    }
    side.layers.push_back(std::move(layer));
  }

  // Reconstruct the lexicographically smallest optimal sequence. A state one
  // step further along is on a shortest path iff its distance to home is
  // exactly the remaining length; the backward side knows that distance up to
  // its radius, and forward states farther out are marked by back-propagation.
  const std::size_t total = best;
  const std::size_t radius = backward.layers.size() - 1;
  const std::size_t direct_from = total > radius ? total - radius : 0;
  std::vector<std::unordered_set<StateCode>> on_path(direct_from);

  auto remaining_is = [&](const StateCode& key, std::size_t k) {
    // `key` sits at forward depth k.
    if (total - k <= radius) {
      auto it = backward.depth.find(key);
      return it != backward.depth.end() && it->second == total - k;
    }
    return on_path[k].contains(key);
  };

  for (std::size_t k = direct_from; k-- > 0;) {
    for (const StateCode& code : forward.layers[k]) {
      current = codec.decode(code).colors;
      for (std::size_t m = 0; m < table.size(); ++m) {
        if (table.fixes(current, m)) continue;
        table.apply(current, next, m);
        if (remaining_is(codec.encode(next), k + 1)) {
          on_path[k].insert(code);
          break;
        }
      }
    }
  }

  current = start.colors;
  for (std::size_t k = 0; k < total; ++k) {
    bool advanced = false;
    for (std::size_t m = 0; m < table.size() && !advanced; ++m) {
      if (table.fixes(current, m)) continue;
      table.apply(current, next, m);
      if (remaining_is(codec.encode(next), k + 1)) {
        solution.moves.push_back(table.move(m));
        current.swap(next);
        advanced = true;
      }
    }
    if (!advanced) throw std::logic_error("bidirectional reconstruction lost the shortest path");
  }
  solution.wall_time = Clock::now() - started;
  return solution;
}

namespace {

constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kFound = kInfinity - 1;

struct IdaSearch {
  const MoveTable& table;
  const Heuristic& heuristic;
  const StateCodec& codec;
  std::size_t node_budget;
  std::size_t expanded = 0;
  std::vector<std::vector<ColorIndex>> stack;  // states along the current path
  std::vector<StateCode> path_codes;
  std::vector<std::size_t> path_moves;

  std::size_t search(std::size_t g, std::size_t bound) {
    const auto& state = stack[g];
    const std::size_t h = heuristic(state);
    if (g + h > bound) return g + h;
    if (std::equal(state.begin(), state.end(), goal.begin())) return kFound;
    if (++expanded > node_budget) {
      throw Error(ErrorCode::BudgetExceeded, "IDA* exceeded " + std::to_string(node_budget) + " expansions");
    }
    if (stack.size() <= g + 1) stack.emplace_back(state.size());
    std::size_t next_bound = kInfinity;
    for (std::size_t m = 0; m < table.size(); ++m) {
      if (!path_moves.empty() && m == table.inverse_index(path_moves.back())) continue;
      if (table.fixes(stack[g], m)) continue;
      table.apply(stack[g], stack[g + 1], m);
      StateCode code = codec.encode(stack[g + 1]);
      if (std::find(path_codes.begin(), path_codes.end(), code) != path_codes.end()) continue;
      path_codes.push_back(std::move(code));
      path_moves.push_back(m);
      const std::size_t t = search(g + 1, bound);
      if (t == kFound) return kFound;
      path_codes.pop_back();
      path_moves.pop_back();
      next_bound = std::min(next_bound, t);
    }
    return next_bound;
  }

  std::vector<ColorIndex> goal;
};

}  // namespace

Solution solve_idastar(const Puzzle& puzzle, const Configuration& start, std::size_t node_budget,
                       Heuristic heuristic) {
  const auto started = Clock::now();
  validate_configuration(start, puzzle.scheme(), puzzle.board().size());
  if (!heuristic) heuristic = mismatch_heuristic(puzzle);
  const StateCodec codec(puzzle.board().size(), puzzle.scheme().num_colors());

  IdaSearch ida{puzzle.moves(), heuristic, codec, node_budget, 0, {}, {}, {}, puzzle.home().colors};
  ida.stack.push_back(start.colors);
  ida.path_codes.push_back(codec.encode(start));

  std::size_t bound = heuristic(start.colors);
  for (;;) {
    const std::size_t t = ida.search(0, bound);
    if (t == kFound) break;
    if (t == kInfinity) throw Error(ErrorCode::Unsolvable, "search tree exhausted without reaching home");
    bound = t;
  }

  Solution solution;
  solution.optimal = true;
  solution.nodes_expanded = ida.expanded;
  for (std::size_t m : ida.path_moves) solution.moves.push_back(puzzle.moves().move(m));
  solution.wall_time = Clock::now() - started;
  return solution;
}

std::optional<Hint> hint(const Puzzle& puzzle, const Configuration& current, std::size_t budget) {
  validate_configuration(current, puzzle.scheme(), puzzle.board().size());
  const MoveTable& table = puzzle.moves();
  if (table.size() == 0) throw Error(ErrorCode::NoMovesAvailable, "board has no cycle of length >= 2");
  if (current == puzzle.home()) return std::nullopt;
  try {
    const Solution s = solve_bfs(puzzle, current, budget);
    return Hint{s.moves.front(), true};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  const Heuristic h = mismatch_heuristic(puzzle);
  std::vector<ColorIndex> next(current.size());
  std::optional<std::pair<std::size_t, std::size_t>> best;  // (score, move index)
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (table.fixes(current.colors, m)) continue;
    table.apply(current.colors, next, m);
    const std::size_t score = h(next);
    if (!best || score < best->first) best = {score, m};
  }
  if (!best) throw Error(ErrorCode::NoMovesAvailable, "no move changes the current configuration");
  return Hint{table.move(best->second), false};
}

}  // namespace quadratis
