#include "quadratis/surface.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "quadratis/disjoint_set.hpp"
#include "quadratis/error.hpp"

namespace quadratis {

namespace {

bool row_major_less(const Cell& a, const Cell& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

enum Corner : std::size_t { BL = 0, BR = 1, TL = 2, TR = 3 };

std::size_t corner_slot(SquareId square, Corner corner) {
  return 4 * static_cast<std::size_t>(square) + corner;
}

DisjointSet identify_corners(const Board& board) {
  DisjointSet corners(4 * board.size());
  for (SquareId i = 0; i < board.size(); ++i) {
    const SquareId r = board.right()[i];
    corners.unite(corner_slot(i, BR), corner_slot(r, BL));
    corners.unite(corner_slot(i, TR), corner_slot(r, TL));
    const SquareId u = board.up()[i];
    corners.unite(corner_slot(i, TL), corner_slot(u, BL));
    corners.unite(corner_slot(i, TR), corner_slot(u, BR));
  }
  return corners;
}

// Closes every maximal run of consecutive coordinates into a cycle.
// `lines` maps a line coordinate to the (coordinate along line, id) pairs on it.
void paste_runs(const std::map<int, std::vector<std::pair<int, SquareId>>>& lines, Permutation& next) {
  for (const auto& [line, members_unsorted] : lines) {
    auto members = members_unsorted;
    std::sort(members.begin(), members.end());
    std::size_t run_start = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const bool run_ends = k + 1 == members.size() || members[k + 1].first != members[k].first + 1;
      if (!run_ends) {
        next[members[k].second] = members[k + 1].second;
      } else {
        next[members[k].second] = members[run_start].second;
        run_start = k + 1;
      }
    }
  }
}

}  // namespace

Polyomino::Polyomino(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw Error(ErrorCode::ValidationError, "polyomino must contain at least one cell", "squares");
  std::sort(cells_.begin(), cells_.end(), row_major_less);
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
    throw Error(ErrorCode::ValidationError, "polyomino cells must be distinct positions", "squares");
  }
}

Polyomino Polyomino::rectangle(int columns, int rows) {
  std::vector<Cell> cells;
  for (int y = 0; y < rows; ++y)
    for (int x = 0; x < columns; ++x) cells.push_back({x, y});
  return Polyomino(std::move(cells));
}

Board::Board(Permutation right, Permutation up, std::optional<std::vector<Cell>> placement)
    : right_(std::move(right)), up_(std::move(up)), placement_(std::move(placement)) {
  if (right_.size() != up_.size()) {
    throw Error(ErrorCode::NotAPermutation, "right and up pastings differ in length", "pasting");
  }
  if (!is_permutation(right_)) throw Error(ErrorCode::NotAPermutation, "right pasting is not a permutation", "pasting.right");
  if (!is_permutation(up_)) throw Error(ErrorCode::NotAPermutation, "up pasting is not a permutation", "pasting.up");
  if (placement_ && placement_->size() != right_.size()) {
    throw Error(ErrorCode::ValidationError, "placement must list one position per square", "squares");
  }
  horizontal_cycles_ = cycles(right_);
  vertical_cycles_ = cycles(up_);
}

Board board_from_permutations(std::size_t n, std::span<const SquareId> right, std::span<const SquareId> up,
                              std::optional<std::vector<Cell>> placement) {
  if (right.size() != n || up.size() != n) {
    throw Error(ErrorCode::NotAPermutation,
                "pasting arrays must have length " + std::to_string(n), "pasting");
  }
  return Board(Permutation(right.begin(), right.end()), Permutation(up.begin(), up.end()), std::move(placement));
}

Board standard_pasting(const Polyomino& shape) {
  const std::size_t n = shape.size();
  std::map<int, std::vector<std::pair<int, SquareId>>> rows;
  std::map<int, std::vector<std::pair<int, SquareId>>> columns;
  for (SquareId id = 0; id < n; ++id) {
    const Cell& c = shape.cell(id);
    rows[c.y].emplace_back(c.x, id);
    columns[c.x].emplace_back(c.y, id);
  }
  Permutation right(n);
  Permutation up(n);
  paste_runs(rows, right);
  paste_runs(columns, up);
  return Board(std::move(right), std::move(up), shape.cells());
}

std::vector<std::vector<SquareId>> surface_components(const Board& board) {
  DisjointSet ds(board.size());
  for (SquareId i = 0; i < board.size(); ++i) {
    ds.unite(i, board.right()[i]);
    ds.unite(i, board.up()[i]);
  }
  std::map<std::size_t, std::vector<SquareId>> by_root;
  for (SquareId i = 0; i < board.size(); ++i) by_root[ds.find(i)].push_back(i);
  std::vector<std::vector<SquareId>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

long corner_vertex_count(const Board& board) {
  return static_cast<long>(identify_corners(board).num_sets());
}

SurfaceInvariants surface_invariants(const Board& board) {
  SurfaceInvariants inv;
  DisjointSet corners = identify_corners(board);
  const long n = static_cast<long>(board.size());
  inv.num_vertices = static_cast<long>(corners.num_sets());
  inv.num_edges = 2 * n;
  inv.num_faces = n;
  inv.euler_characteristic = inv.num_vertices - inv.num_edges + inv.num_faces;

  for (auto& squares : surface_components(board)) {
    std::set<std::size_t> vertex_classes;
    for (SquareId s : squares)
      for (std::size_t c = 0; c < 4; ++c) vertex_classes.insert(corners.find(corner_slot(s, static_cast<Corner>(c))));
    ComponentTopology comp;
    comp.num_vertices = static_cast<long>(vertex_classes.size());
    comp.euler_characteristic = comp.num_vertices - static_cast<long>(squares.size());
    comp.genus = (2 - comp.euler_characteristic) / 2;
    comp.squares = std::move(squares);
    inv.components.push_back(std::move(comp));
  }
  inv.connected = inv.components.size() == 1;
  if (inv.connected) inv.genus = inv.components.front().genus;

  for (const Cycle& c : cycles(commutator(board.right(), board.up()))) inv.cone_angles.push_back(static_cast<long>(c.size()));
  std::sort(inv.cone_angles.begin(), inv.cone_angles.end());
  return inv;
}

}  // namespace quadratis
