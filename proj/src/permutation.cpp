#include "quadratis/permutation.hpp"

#include <numeric>

namespace quadratis {

bool is_permutation(std::span<const SquareId> p) {
  std::vector<bool> seen(p.size(), false);
  for (SquareId v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), SquareId{0});
  return p;
}

Permutation inverse(std::span<const SquareId> p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<SquareId>(i);
  return inv;
}

Permutation compose(std::span<const SquareId> f, std::span<const SquareId> g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

std::vector<Cycle> cycles(std::span<const SquareId> p) {
  std::vector<Cycle> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    Cycle c;
    for (SquareId v = static_cast<SquareId>(start); !seen[v]; v = p[v]) {
      seen[v] = true;
      c.push_back(v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Permutation commutator(std::span<const SquareId> right, std::span<const SquareId> up) {
  const Permutation right_inv = inverse(right);
  const Permutation up_inv = inverse(up);
  return compose(right, compose(up, compose(right_inv, up_inv)));
}

}  // namespace quadratis
