#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quadratis/puzzle.hpp"
#include "quadratis/state_code.hpp"

namespace quadratis {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Simple undirected graph on the configurations reachable from home. Vertex
// ids follow BFS discovery order, so vertex 0 is always home and depth is
// nondecreasing in the id.
class PuzzleSpaceGraph {
 public:
  PuzzleSpaceGraph(StateCodec codec, std::vector<ColorIndex> colors, std::vector<Edge> edges,
                   std::vector<std::uint32_t> depth, bool complete);

  std::size_t num_vertices() const { return depth_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_squares() const { return codec_.num_squares(); }
  VertexId home() const { return 0; }
  bool complete() const { return complete_; }

  const StateCodec& codec() const { return codec_; }
  // Sorted lexicographically, each pair with first < second.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& depths() const { return depth_; }
  std::span<const ColorIndex> colors(VertexId v) const;
  Configuration configuration(VertexId v) const;
  StateCode code(VertexId v) const { return codec_.encode(colors(v)); }

  std::optional<VertexId> find(const StateCode& code) const;
  std::optional<VertexId> find(const Configuration& cfg) const { return find(codec_.encode(cfg)); }

  std::span<const VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  // Moves taking edge.first to edge.second; filled only on request.
  std::optional<std::map<Edge, std::vector<MoveSpec>>> move_labels;

 private:
  StateCodec codec_;
  std::vector<ColorIndex> colors_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> depth_;
  bool complete_;
  std::unordered_map<StateCode, VertexId> index_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<VertexId> adjacency_;
};

struct EnumerateOptions {
  std::size_t max_states = std::numeric_limits<std::size_t>::max();
  bool record_move_labels = false;
};

// Breadth-first closure of home. When max_states is reached the returned
// graph is the induced subgraph on the states found so far with
// complete() == false.
PuzzleSpaceGraph enumerate_space(const Puzzle& puzzle, const EnumerateOptions& options = {});

struct ColoringComponent {
  std::size_t size = 0;
  StateCode representative;  // smallest code in the component
};

struct AllColoringsReport {
  std::size_t num_colorings = 0;
  std::size_t num_edges = 0;  // of the simple graph on all colorings
  std::vector<ColoringComponent> components;  // largest first
};

// Partitions every coloring of the scheme into move-connected components.
// Throws Error{BudgetExceeded} when there are more than `budget` colorings.
AllColoringsReport all_colorings_components(const Board& board, const ColorScheme& scheme,
                                            std::size_t budget = 50'000'000);

// Throws Error{StateNotInSpace} when either state is missing.
std::size_t distance(const PuzzleSpaceGraph& graph, const StateCode& a, const StateCode& b);

// BFS distances from one vertex; unreachable vertices get UINT32_MAX.
std::vector<std::uint32_t> bfs_distances(const PuzzleSpaceGraph& graph, VertexId source);

struct DiameterResult {
  std::size_t value = 0;
  bool exact = true;  // otherwise a certified lower bound from BFS sweeps
};

// Throws Error{IncompleteGraph} on a budget-truncated graph.
DiameterResult diameter(const PuzzleSpaceGraph& graph, std::size_t exact_budget = 100'000);

struct SpaceReport {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  bool complete = true;
  std::optional<DiameterResult> diameter;  // absent for truncated graphs
  std::size_t eccentricity_of_home = 0;
  std::vector<std::size_t> distance_histogram;
  std::size_t max_degree = 0;
  std::size_t min_degree = 0;
};

SpaceReport space_report(const PuzzleSpaceGraph& graph, std::size_t exact_diameter_budget = 100'000);

enum class GraphFormat { Dot, GraphML, Json };

std::optional<GraphFormat> parse_graph_format(std::string_view name);

// Throws Error{IoError} when the sink fails.
void export_graph(const PuzzleSpaceGraph& graph, GraphFormat format, std::ostream& sink);

}  // namespace quadratis
