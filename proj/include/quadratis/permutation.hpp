#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace quadratis {

using SquareId = std::uint32_t;

// A permutation of 0..n-1 stored as its image array: p[i] is the image of i.
using Permutation = std::vector<SquareId>;
using Cycle = std::vector<SquareId>;

bool is_permutation(std::span<const SquareId> p);

Permutation identity_permutation(std::size_t n);
Permutation inverse(std::span<const SquareId> p);

// (f ∘ g)(x) = f(g(x))
Permutation compose(std::span<const SquareId> f, std::span<const SquareId> g);

// Cycles listed by smallest member; each cycle starts at its smallest member
// and follows p, so cycle[k + 1] == p[cycle[k]].
std::vector<Cycle> cycles(std::span<const SquareId> p);

// right ∘ up ∘ right⁻¹ ∘ up⁻¹
Permutation commutator(std::span<const SquareId> right, std::span<const SquareId> up);

}  // namespace quadratis
