#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "quadratis/error.hpp"
#include "quadratis/rng.hpp"
#include "quadratis/surface.hpp"

using namespace quadratis;

namespace {

Polyomino cross_shape() {
  return Polyomino({{2, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {2, 4}});
}

std::vector<std::size_t> cycle_lengths(const Permutation& p) {
  std::vector<std::size_t> out;
  for (const auto& c : cycles(p)) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

Permutation random_perm(std::size_t n, Rng& rng) {
  Permutation p = identity_permutation(n);
  for (std::size_t i = n; i-- > 1;) std::swap(p[i], p[rng.below(i + 1)]);
  return p;
}

}  // namespace

TEST_CASE("polyomino ids are row-major from the bottom row") {
  const Polyomino p({{1, 1}, {0, 0}, {1, 0}});
  CHECK(p.cell(0) == Cell{0, 0});
  CHECK(p.cell(1) == Cell{1, 0});
  CHECK(p.cell(2) == Cell{1, 1});
  CHECK_THROWS_AS(Polyomino({}), Error);
  CHECK_THROWS_AS(Polyomino({{0, 0}, {0, 0}}), Error);
}

TEST_CASE("standard pasting of the 3x3 square closes every row and column") {
  const Board b = standard_pasting(Polyomino::rectangle(3, 3));
  CHECK(b.right() == Permutation{1, 2, 0, 4, 5, 3, 7, 8, 6});
  CHECK(b.up() == Permutation{3, 4, 5, 6, 7, 8, 0, 1, 2});
  CHECK(cycle_lengths(b.right()) == std::vector<std::size_t>{3, 3, 3});
  CHECK(cycle_lengths(b.up()) == std::vector<std::size_t>{3, 3, 3});
}

TEST_CASE("single square is a one-square torus") {
  const Board b = standard_pasting(Polyomino({{0, 0}}));
  CHECK(b.right() == Permutation{0});
  CHECK(b.up() == Permutation{0});
  CHECK(surface_invariants(b).genus == 1);
}

TEST_CASE("standard pasting of the cross has one 5-cycle per axis") {
  const Board b = standard_pasting(cross_shape());
  CHECK(b.right() == Permutation{0, 1, 3, 4, 5, 6, 2, 7, 8});
  CHECK(b.up() == Permutation{1, 4, 2, 3, 7, 5, 6, 8, 0});
  CHECK(cycle_lengths(b.right()) == std::vector<std::size_t>{1, 1, 1, 1, 5});
  CHECK(cycle_lengths(b.up()) == std::vector<std::size_t>{1, 1, 1, 1, 5});
}

TEST_CASE("rows with several runs close each run on itself") {
  std::vector<Cell> cells;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x)
      if (x != 2 || y != 2) cells.push_back({x, y});
  const Board b = standard_pasting(Polyomino(cells));
  // Middle row ids: (0,2)=10 (1,2)=11 (3,2)=12 (4,2)=13.
  CHECK(b.right()[10] == 11);
  CHECK(b.right()[11] == 10);
  CHECK(b.right()[12] == 13);
  CHECK(b.right()[13] == 12);
  CHECK(cycle_lengths(b.right()) == std::vector<std::size_t>{2, 2, 5, 5, 5, 5});
  CHECK(cycle_lengths(b.up()) == std::vector<std::size_t>{2, 2, 5, 5, 5, 5});
}

TEST_CASE("board_from_permutations rejects malformed pastings") {
  const Permutation good{1, 0};
  const Permutation repeated{0, 0};
  CHECK_NOTHROW(board_from_permutations(2, good, good));
  try {
    board_from_permutations(2, repeated, good);
    FAIL("expected NotAPermutation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPermutation);
  }
  CHECK_THROWS_AS(board_from_permutations(3, good, good), Error);
  const Permutation out_of_range{0, 2};
  CHECK_THROWS_AS(board_from_permutations(2, good, out_of_range), Error);
}

TEST_CASE("surface components") {
  CHECK(surface_components(standard_pasting(Polyomino::rectangle(3, 3))).size() == 1);
  const Permutation id{0, 1};
  const Permutation swap{1, 0};
  CHECK(surface_components(board_from_permutations(2, id, id)).size() == 2);
  CHECK(surface_components(board_from_permutations(2, swap, id)).size() == 1);
}

TEST_CASE("torus invariants") {
  const auto inv = surface_invariants(standard_pasting(Polyomino::rectangle(3, 3)));
  CHECK(inv.connected);
  CHECK(inv.num_vertices == 9);
  CHECK(inv.num_edges == 18);
  CHECK(inv.num_faces == 9);
  CHECK(inv.euler_characteristic == 0);
  CHECK(inv.genus == 1);
  CHECK(inv.cone_angles == std::vector<long>(9, 1));
}

TEST_CASE("cross is a genus-2 surface with one cone point of angle 6 pi") {
  const Board b = standard_pasting(cross_shape());
  const auto inv = surface_invariants(b);
  CHECK(inv.euler_characteristic == -2);
  CHECK(inv.genus == 2);
  CHECK(inv.num_vertices == 7);
  CHECK(inv.cone_angles == std::vector<long>{1, 1, 1, 1, 1, 1, 3});
  CHECK(oracle::commutator_cycle_count(b.right(), b.up()) == 7);
}

TEST_CASE("disconnected boards report genus per component") {
  // A one-square torus next to a 2x2 torus.
  const Permutation right{0, 2, 1, 4, 3};
  const Permutation up{0, 3, 4, 1, 2};
  const auto inv = surface_invariants(board_from_permutations(5, right, up));
  CHECK_FALSE(inv.connected);
  CHECK_FALSE(inv.genus.has_value());
  REQUIRE(inv.components.size() == 2);
  CHECK(inv.components[0].squares == std::vector<SquareId>{0});
  CHECK(inv.components[0].genus == 1);
  CHECK(inv.components[1].genus == 1);
  CHECK(inv.euler_characteristic == 0);
}

TEST_CASE("every standard rectangle is a torus") {
  for (int r = 1; r <= 6; ++r)
    for (int c = 1; c <= 6; ++c) {
      CAPTURE(r);
      CAPTURE(c);
      CHECK(surface_invariants(standard_pasting(Polyomino::rectangle(c, r))).genus == 1);
    }
}

TEST_CASE("property: corner classes match commutator cycles on random boards") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    const Board b(random_perm(n, rng), random_perm(n, rng));
    const auto inv = surface_invariants(b);
    const long cone_total = std::accumulate(inv.cone_angles.begin(), inv.cone_angles.end(), 0L);
    REQUIRE(corner_vertex_count(b) == static_cast<long>(oracle::commutator_cycle_count(b.right(), b.up())));
    REQUIRE(inv.cone_angles.size() == static_cast<std::size_t>(inv.num_vertices));
    REQUIRE(cone_total == static_cast<long>(n));
    for (const auto& comp : inv.components) {
      REQUIRE(comp.euler_characteristic % 2 == 0);
      REQUIRE(comp.genus >= 0);
    }
    if (inv.connected && *inv.genus >= 1) {
      long excess = 0;
      for (long k : inv.cone_angles) excess += k - 1;
      REQUIRE(excess == 2 * *inv.genus - 2);
    }
  }
}

TEST_CASE("property: components are invariant under relabelling") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    const Permutation r = random_perm(n, rng);
    const Permutation u = random_perm(n, rng);
    const Permutation sigma = random_perm(n, rng);
    const Permutation sigma_inv = inverse(sigma);
    const Board a(r, u);
    const Board b(compose(sigma, compose(r, sigma_inv)), compose(sigma, compose(u, sigma_inv)));
    auto sizes = [](const Board& board) {
      std::vector<std::size_t> s;
      for (const auto& c : surface_components(board)) s.push_back(c.size());
      std::sort(s.begin(), s.end());
      return s;
    };
    REQUIRE(sizes(a) == sizes(b));
    REQUIRE(surface_invariants(a).cone_angles == surface_invariants(b).cone_angles);
  }
}
