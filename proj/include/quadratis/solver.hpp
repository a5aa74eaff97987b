#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "quadratis/puzzle.hpp"

namespace quadratis {

struct Solution {
  std::vector<MoveSpec> moves;
  bool optimal = false;
  std::size_t nodes_expanded = 0;
  std::chrono::nanoseconds wall_time{0};
};

// Lower bound on the number of moves from a state to home.
using Heuristic = std::function<std::size_t(std::span<const ColorIndex>)>;

// ceil(mismatched squares / longest movable cycle): one move changes at most
// that many squares.
Heuristic mismatch_heuristic(const Puzzle& puzzle);

// Bidirectional BFS. Among optimal solutions the lexicographically smallest
// move-index sequence is returned. Throws Error{Unsolvable} when one side's
// component is exhausted and Error{BudgetExceeded} past `budget` stored states.
Solution solve_bfs(const Puzzle& puzzle, const Configuration& start, std::size_t budget = 10'000'000);

// Iterative-deepening A*. With an admissible heuristic it returns the same
// sequence solve_bfs does. Throws Error{Unsolvable} only after a full
// iteration prunes nothing, Error{BudgetExceeded} past `node_budget` expansions.
Solution solve_idastar(const Puzzle& puzzle, const Configuration& start, std::size_t node_budget = 50'000'000,
                       Heuristic heuristic = {});

struct Hint {
  MoveSpec move;
  bool optimal = false;
};

// First move of an optimal solution, or the greedy heuristic choice when the
// search runs out of budget. Empty when `current` is already home.
std::optional<Hint> hint(const Puzzle& puzzle, const Configuration& current, std::size_t budget = 1'000'000);

}  // namespace quadratis
