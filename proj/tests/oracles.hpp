#pragma once

// Brute-force reference computations used to check the library. They work
// directly from the pasting arrays and never call into the search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

namespace oracle {

using Colors = std::vector<int>;
using Perm = std::vector<std::uint32_t>;

struct ShiftMove {
  std::vector<std::uint32_t> orbit;  // squares in push order
};

inline std::vector<std::vector<std::uint32_t>> orbits(const Perm& p) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(p.size());
  for (std::uint32_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> orbit;
    for (std::uint32_t v = s; !seen[v]; v = p[v]) {
      seen[v] = true;
      orbit.push_back(v);
    }
    out.push_back(orbit);
  }
  return out;
}

// Every push along every orbit of length >= 2, in both directions.
inline std::vector<ShiftMove> all_pushes(const Perm& right, const Perm& up) {
  std::vector<ShiftMove> out;
  for (const Perm* p : {&right, &up}) {
    for (auto orbit : orbits(*p)) {
      if (orbit.size() < 2) continue;
      out.push_back({orbit});
      std::reverse(orbit.begin(), orbit.end());
      out.push_back({orbit});
    }
  }
  return out;
}

inline Colors push(const Colors& c, const ShiftMove& mv) {
  Colors out = c;
  const auto& o = mv.orbit;
  for (std::size_t k = 0; k < o.size(); ++k) out[o[(k + 1) % o.size()]] = c[o[k]];
  return out;
}

inline void all_colorings_rec(std::vector<std::size_t>& left, Colors& cur, std::vector<Colors>& out, std::size_t n) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t c = 0; c < left.size(); ++c) {
    if (!left[c]) continue;
    --left[c];
    cur.push_back(static_cast<int>(c));
    all_colorings_rec(left, cur, out, n);
    cur.pop_back();
    ++left[c];
  }
}

inline std::vector<Colors> all_colorings(std::vector<std::size_t> counts) {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  std::vector<Colors> out;
  Colors cur;
  all_colorings_rec(counts, cur, out, n);
  return out;
}

// Graph on all colorings: a -- b iff some single push maps a to b (a != b).
struct FullGraph {
  std::vector<Colors> vertices;
  std::map<Colors, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // first < second

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

inline FullGraph full_graph(const Perm& right, const Perm& up, const std::vector<std::size_t>& counts) {
  FullGraph g;
  g.vertices = all_colorings(counts);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) g.index[g.vertices[i]] = i;
  const auto moves = all_pushes(right, up);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (const auto& mv : moves) {
      const std::size_t j = g.index.at(push(g.vertices[i], mv));
      if (j != i) g.edges.insert({std::min(i, j), std::max(i, j)});
    }
  }
  return g;
}

inline std::vector<int> bfs(const std::vector<std::vector<std::size_t>>& adj, std::size_t source) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<std::size_t> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

inline std::size_t commutator_cycle_count(const Perm& r, const Perm& u) {
  const std::size_t n = r.size();
  Perm rinv(n), uinv(n), c(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rinv[r[i]] = i;
    uinv[u[i]] = i;
  }
  for (std::uint32_t x = 0; x < n; ++x) c[x] = r[u[rinv[uinv[x]]]];
  return orbits(c).size();
}

// Number of pairs of permutations of n points generating a transitive group,
// by the standard recurrence over the block containing point 0.
inline std::uint64_t transitive_pairs(std::size_t n) {
  std::vector<std::uint64_t> fact(n + 1, 1), t(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  auto binom = [&](std::size_t a, std::size_t b) { return fact[a] / (fact[b] * fact[a - b]); };
  for (std::size_t m = 1; m <= n; ++m) {
    std::uint64_t v = fact[m] * fact[m];
    for (std::size_t k = 1; k < m; ++k) v -= binom(m - 1, k - 1) * t[k] * fact[m - k] * fact[m - k];
    t[m] = v;
  }
  return t[n];
}

}  // namespace oracle
