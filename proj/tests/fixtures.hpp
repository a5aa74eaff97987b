#pragma once

#include <vector>

#include "quadratis/puzzle.hpp"

namespace fixtures {

inline quadratis::Polyomino cross_shape() {
  return quadratis::Polyomino({{2, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {2, 4}});
}

inline quadratis::Polyomino grid_with_hole() {
  std::vector<quadratis::Cell> cells;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x)
      if (x != 2 || y != 2) cells.push_back({x, y});
  return quadratis::Polyomino(cells);
}

inline quadratis::Puzzle make_puzzle(const quadratis::Polyomino& shape, std::vector<int> home, const char* name = "t") {
  std::vector<std::size_t> counts;
  for (int c : home) {
    if (static_cast<std::size_t>(c) >= counts.size()) counts.resize(c + 1, 0);
    ++counts[c];
  }
  quadratis::Configuration cfg;
  for (int c : home) cfg.colors.push_back(static_cast<quadratis::ColorIndex>(c));
  return quadratis::Puzzle(name, quadratis::standard_pasting(shape), quadratis::ColorScheme::from_counts(counts),
                           cfg);
}

// Pink centre, blue horizontal arms, purple vertical arms.
inline quadratis::Puzzle cross_puzzle() { return make_puzzle(cross_shape(), {2, 2, 1, 1, 0, 1, 1, 2, 2}, "cross"); }

// N x N torus, N colors, home has uniform rows.
inline quadratis::Puzzle chroma(int n) {
  std::vector<int> home;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) home.push_back(y);
  return make_puzzle(quadratis::Polyomino::rectangle(n, n), home, "chroma");
}

inline quadratis::Puzzle square_3_6() {
  return make_puzzle(quadratis::Polyomino::rectangle(3, 3), {0, 0, 0, 1, 1, 1, 1, 1, 1}, "square3-3-6");
}

inline quadratis::Puzzle distinct_3x3() {
  return make_puzzle(quadratis::Polyomino::rectangle(3, 3), {0, 1, 2, 3, 4, 5, 6, 7, 8}, "distinct");
}

inline quadratis::Puzzle hole_puzzle() {
  const quadratis::Polyomino shape = grid_with_hole();
  std::vector<int> home;
  for (const auto& c : shape.cells()) {
    if (c.y <= 1 && c.x <= 2) home.push_back(0);
    else if (c.x >= 3 && c.y <= 2) home.push_back(1);
    else if (c.y >= 3 && c.x >= 2) home.push_back(2);
    else home.push_back(3);
  }
  return make_puzzle(shape, home, "grid5-hole");
}

inline std::vector<int> as_ints(const quadratis::Configuration& c) { return {c.colors.begin(), c.colors.end()}; }

inline quadratis::Configuration as_config(const std::vector<int>& v) {
  quadratis::Configuration c;
  for (int x : v) c.colors.push_back(static_cast<quadratis::ColorIndex>(x));
  return c;
}

}  // namespace fixtures
