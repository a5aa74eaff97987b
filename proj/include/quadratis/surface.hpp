#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quadratis/permutation.hpp"

namespace quadratis {

// Lattice position of a unit square. y grows upward.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// A planar square-tiled shape. Square ids follow row-major order starting
// from the bottom row, left to right.
class Polyomino {
 public:
  explicit Polyomino(std::vector<Cell> cells);

  static Polyomino rectangle(int columns, int rows);

  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(SquareId id) const { return cells_[id]; }

 private:
  std::vector<Cell> cells_;
};

// N unit squares glued by two pasting permutations: right[i] is the square
// glued along i's right edge, up[i] the square glued along i's upper edge.
class Board {
 public:
  Board(Permutation right, Permutation up, std::optional<std::vector<Cell>> placement = std::nullopt);

  std::size_t size() const { return right_.size(); }
  const Permutation& right() const { return right_; }
  const Permutation& up() const { return up_; }
  const std::optional<std::vector<Cell>>& placement() const { return placement_; }

  const std::vector<Cycle>& horizontal_cycles() const { return horizontal_cycles_; }
  const std::vector<Cycle>& vertical_cycles() const { return vertical_cycles_; }

  friend bool operator==(const Board& a, const Board& b) {
    return a.right_ == b.right_ && a.up_ == b.up_ && a.placement_ == b.placement_;
  }

 private:
  Permutation right_;
  Permutation up_;
  std::optional<std::vector<Cell>> placement_;
  std::vector<Cycle> horizontal_cycles_;
  std::vector<Cycle> vertical_cycles_;
};

struct ComponentTopology {
  std::vector<SquareId> squares;
  long num_vertices = 0;
  long euler_characteristic = 0;
  long genus = 0;
};

struct SurfaceInvariants {
  bool connected = false;
  long num_vertices = 0;
  long num_edges = 0;
  long num_faces = 0;
  long euler_characteristic = 0;
  // Present only for connected boards; see `components` otherwise.
  std::optional<long> genus;
  std::vector<ComponentTopology> components;
  // Sorted ascending. A vertex with cone angle 2πk contributes k.
  std::vector<long> cone_angles;
};

// Validates both arrays; throws Error{NotAPermutation} on a malformed pasting.
Board board_from_permutations(std::size_t n, std::span<const SquareId> right, std::span<const SquareId> up,
                              std::optional<std::vector<Cell>> placement = std::nullopt);

// Glue adjacent cells, then close each maximal run of a row (column) into a
// cycle by pasting its free left (lower) side to its own free right (upper) side.
Board standard_pasting(const Polyomino& shape);

// Orbits of the group generated by right and up, each sorted, listed by
// smallest member.
std::vector<std::vector<SquareId>> surface_components(const Board& board);

// Vertex count via union-find over the 4N square corners.
long corner_vertex_count(const Board& board);

SurfaceInvariants surface_invariants(const Board& board);

}  // namespace quadratis
