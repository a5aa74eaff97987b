#include "quadratis/space.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "quadratis/disjoint_set.hpp"
#include "quadratis/error.hpp"

namespace quadratis {

PuzzleSpaceGraph::PuzzleSpaceGraph(StateCodec codec, std::vector<ColorIndex> colors, std::vector<Edge> edges,
                                   std::vector<std::uint32_t> depth, bool complete)
    : codec_(std::move(codec)),
      colors_(std::move(colors)),
      edges_(std::move(edges)),
      depth_(std::move(depth)),
      complete_(complete) {
  const std::size_t n = depth_.size();
  index_.reserve(n);
  for (VertexId v = 0; v < n; ++v) index_.emplace(code(v), v);

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : edges_) {
    ++degree[a];
    ++degree[b];
  }
  adjacency_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) adjacency_offsets_[v + 1] = adjacency_offsets_[v] + degree[v];
  adjacency_.resize(adjacency_offsets_[n]);
  std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (const auto& [a, b] : edges_) {
    adjacency_[fill[a]++] = b;
    adjacency_[fill[b]++] = a;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(adjacency_.begin() + adjacency_offsets_[v], adjacency_.begin() + adjacency_offsets_[v + 1]);
}

std::span<const ColorIndex> PuzzleSpaceGraph::colors(VertexId v) const {
  const std::size_t n = codec_.num_squares();
  return std::span<const ColorIndex>(colors_).subspan(static_cast<std::size_t>(v) * n, n);
}

Configuration PuzzleSpaceGraph::configuration(VertexId v) const {
  const auto c = colors(v);
  return Configuration{std::vector<ColorIndex>(c.begin(), c.end())};
}

std::optional<VertexId> PuzzleSpaceGraph::find(const StateCode& code) const {
  auto it = index_.find(code);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const VertexId> PuzzleSpaceGraph::neighbors(VertexId v) const {
  return std::span<const VertexId>(adjacency_).subspan(adjacency_offsets_[v],
                                                       adjacency_offsets_[v + 1] - adjacency_offsets_[v]);
}

namespace {

struct PackedKey {
  const StateCodec& codec;
  std::uint64_t operator()(std::span<const ColorIndex> c) const { return codec.pack(c); }
};

struct ByteKey {
  std::string operator()(std::span<const ColorIndex> c) const { return std::string(c.begin(), c.end()); }
};

template <typename KeyFn>
PuzzleSpaceGraph bfs_closure(const Puzzle& puzzle, const StateCodec& codec, KeyFn key_of,
                             const EnumerateOptions& options) {
  using Key = decltype(key_of(std::span<const ColorIndex>{}));
  const MoveTable& table = puzzle.moves();
  const std::size_t n = puzzle.board().size();
  const std::size_t max_states = std::max<std::size_t>(options.max_states, 1);

  std::unordered_map<Key, VertexId> ids;
  std::vector<ColorIndex> colors(puzzle.home().colors);
  std::vector<std::uint32_t> depth{0};
  std::vector<Edge> edges;
  std::map<Edge, std::vector<MoveSpec>> labels;
  bool complete = true;
  ids.emplace(key_of(puzzle.home().colors), 0);

  std::vector<ColorIndex> current(n);
  std::vector<ColorIndex> next(n);
  std::vector<std::pair<VertexId, std::size_t>> found;
  // Vertex ids are assigned in BFS order, so scanning ids in order expands
  // the graph level by level.
  for (VertexId v = 0; v < depth.size(); ++v) {
    std::copy_n(colors.begin() + static_cast<std::ptrdiff_t>(v) * n, n, current.begin());
    found.clear();
    for (std::size_t m = 0; m < table.size(); ++m) {
      if (table.fixes(current, m)) continue;
      table.apply(current, next, m);
      Key key = key_of(next);
      auto it = ids.find(key);
      VertexId w;
      if (it != ids.end()) {
        w = it->second;
      } else if (depth.size() < max_states) {
        w = static_cast<VertexId>(depth.size());
        ids.emplace(std::move(key), w);
        colors.insert(colors.end(), next.begin(), next.end());
        depth.push_back(depth[v] + 1);
      } else {
        complete = false;
        continue;
      }
      // Edges to earlier ids were recorded when those vertices were expanded.
      if (w > v) found.emplace_back(w, m);
    }
    std::sort(found.begin(), found.end());
    for (std::size_t k = 0; k < found.size(); ++k) {
      const Edge e{v, found[k].first};
      if (k == 0 || found[k - 1].first != found[k].first) edges.push_back(e);
      if (options.record_move_labels) labels[e].push_back(table.move(found[k].second));
    }
  }

  PuzzleSpaceGraph graph(codec, std::move(colors), std::move(edges), std::move(depth), complete);
  if (options.record_move_labels) graph.move_labels = std::move(labels);
  return graph;
}

}  // namespace

PuzzleSpaceGraph enumerate_space(const Puzzle& puzzle, const EnumerateOptions& options) {
  StateCodec codec(puzzle.board().size(), puzzle.scheme().num_colors());
  if (codec.packed()) return bfs_closure(puzzle, codec, PackedKey{codec}, options);
  return bfs_closure(puzzle, codec, ByteKey{}, options);
}

AllColoringsReport all_colorings_components(const Board& board, const ColorScheme& scheme, std::size_t budget) {
  const BigInt total = count_all_colorings(board, scheme);
  if (total > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "scheme has " + total.str() + " colorings, budget is " + std::to_string(budget));
  }
  const std::size_t count = static_cast<std::size_t>(total);
  const std::size_t n = board.size();
  const StateCodec codec(n, scheme.num_colors());
  const MoveTable table(board);

  std::vector<ColorIndex> first;
  for (std::size_t c = 0; c < scheme.num_colors(); ++c) first.insert(first.end(), scheme.colors()[c].count, c);

  // Distinct multiset permutations in lexicographic order.
  std::vector<StateCode> codes;
  codes.reserve(count);
  std::vector<ColorIndex> coloring = first;
  do {
    codes.push_back(codec.encode(coloring));
  } while (std::next_permutation(coloring.begin(), coloring.end()));
  std::sort(codes.begin(), codes.end());

  auto index_of = [&](const StateCode& code) {
    return static_cast<std::size_t>(std::lower_bound(codes.begin(), codes.end(), code) - codes.begin());
  };

  DisjointSet components(count);
  AllColoringsReport report;
  report.num_colorings = count;
  std::vector<ColorIndex> current(n);
  std::vector<ColorIndex> next(n);
  std::vector<std::size_t> neighbors;
  for (std::size_t i = 0; i < count; ++i) {
    current = codec.decode(codes[i]).colors;
    neighbors.clear();
    for (std::size_t m = 0; m < table.size(); ++m) {
      if (table.fixes(current, m)) continue;
      table.apply(current, next, m);
      neighbors.push_back(index_of(codec.encode(next)));
    }
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    for (std::size_t j : neighbors) {
      if (j > i) ++report.num_edges;
      components.unite(i, j);
    }
  }

  std::map<std::size_t, std::size_t> root_to_component;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t root = components.find(i);
    auto [it, inserted] = root_to_component.emplace(root, report.components.size());
    if (inserted) report.components.push_back({0, codes[i]});
    ++report.components[it->second].size;
  }
  std::stable_sort(report.components.begin(), report.components.end(),
                   [](const ColoringComponent& a, const ColoringComponent& b) { return a.size > b.size; });
  return report;
}

std::vector<std::uint32_t> bfs_distances(const PuzzleSpaceGraph& graph, VertexId source) {
  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(graph.num_vertices(), kUnreached);
  std::vector<VertexId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (VertexId w : graph.neighbors(v)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::size_t distance(const PuzzleSpaceGraph& graph, const StateCode& a, const StateCode& b) {
  const auto va = graph.find(a);
  const auto vb = graph.find(b);
  if (!va || !vb) throw Error(ErrorCode::StateNotInSpace, "state is not in the puzzle space", va ? "b" : "a");
  if (*va == graph.home() && graph.complete()) return graph.depths()[*vb];
  if (*vb == graph.home() && graph.complete()) return graph.depths()[*va];
  const std::uint32_t d = bfs_distances(graph, *va)[*vb];
  if (d == std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::StateNotInSpace, "states are not connected in the explored graph");
  }
  return d;
}

namespace {

std::pair<VertexId, std::size_t> farthest(const PuzzleSpaceGraph& graph, VertexId source) {
  const auto dist = bfs_distances(graph, source);
  VertexId best = source;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] > dist[best]) best = v;
  return {best, dist[best]};
}

}  // namespace

DiameterResult diameter(const PuzzleSpaceGraph& graph, std::size_t exact_budget) {
  if (!graph.complete()) throw Error(ErrorCode::IncompleteGraph, "diameter needs a complete puzzle space");
  DiameterResult result;
  if (graph.num_vertices() <= exact_budget) {
    for (VertexId v = 0; v < graph.num_vertices(); ++v) result.value = std::max(result.value, farthest(graph, v).second);
    return result;
  }
  // Repeated double sweeps: every value is an eccentricity, hence a lower bound.
  result.exact = false;
  VertexId start = graph.home();
  for (int sweep = 0; sweep < 4; ++sweep) {
    const auto [far, ecc] = farthest(graph, start);
    result.value = std::max(result.value, ecc);
    if (far == start) break;
    start = far;
  }
  return result;
}

SpaceReport space_report(const PuzzleSpaceGraph& graph, std::size_t exact_diameter_budget) {
  SpaceReport report;
  report.num_vertices = graph.num_vertices();
  report.num_edges = graph.num_edges();
  report.complete = graph.complete();
  if (graph.complete()) report.diameter = diameter(graph, exact_diameter_budget);
  for (std::uint32_t d : graph.depths()) {
    if (d >= report.distance_histogram.size()) report.distance_histogram.resize(d + 1, 0);
    ++report.distance_histogram[d];
  }
  report.eccentricity_of_home = report.distance_histogram.empty() ? 0 : report.distance_histogram.size() - 1;
  report.min_degree = graph.num_vertices() ? std::numeric_limits<std::size_t>::max() : 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    report.max_degree = std::max(report.max_degree, graph.degree(v));
    report.min_degree = std::min(report.min_degree, graph.degree(v));
  }
  return report;
}

}  // namespace quadratis
