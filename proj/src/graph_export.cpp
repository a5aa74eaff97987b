#include <json.hpp>

#include "quadratis/error.hpp"
#include "quadratis/space.hpp"

namespace quadratis {

namespace {

std::string joined_colors(std::span<const ColorIndex> colors, char sep) {
  std::string out;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(colors[i]);
  }
  return out;
}

void write_dot(const PuzzleSpaceGraph& graph, std::ostream& out) {
  out << "graph puzzle_space {\n";
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    out << "  " << v << " [depth=" << graph.depths()[v] << ", colors=\"" << joined_colors(graph.colors(v), ',')
        << "\"";
    if (v == graph.home()) out << ", home=true";
    out << "];\n";
  }
  for (const auto& [a, b] : graph.edges()) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
}

void write_graphml(const PuzzleSpaceGraph& graph, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"depth\" for=\"node\" attr.name=\"depth\" attr.type=\"int\"/>\n"
         "  <key id=\"colors\" for=\"node\" attr.name=\"colors\" attr.type=\"string\"/>\n"
         "  <graph id=\"puzzle_space\" edgedefault=\"undirected\">\n";
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    out << "    <node id=\"n" << v << "\"><data key=\"depth\">" << graph.depths()[v]
        << "</data><data key=\"colors\">" << joined_colors(graph.colors(v), ',') << "</data></node>\n";
  }
  for (const auto& [a, b] : graph.edges()) out << "    <edge source=\"n" << a << "\" target=\"n" << b << "\"/>\n";
  out << "  </graph>\n</graphml>\n";
}

void write_json(const PuzzleSpaceGraph& graph, std::ostream& out) {
  nlohmann::json doc;
  auto& nodes = doc["nodes"] = nlohmann::json::array();
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const auto c = graph.colors(v);
    nodes.push_back({{"id", v}, {"depth", graph.depths()[v]}, {"colors", std::vector<int>(c.begin(), c.end())}});
  }
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : graph.edges()) edges.push_back({a, b});
  out << doc.dump() << '\n';
}

}  // namespace

std::optional<GraphFormat> parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "graphml") return GraphFormat::GraphML;
  if (name == "json" || name == "json-nodes-edges") return GraphFormat::Json;
  return std::nullopt;
}

void export_graph(const PuzzleSpaceGraph& graph, GraphFormat format, std::ostream& sink) {
  switch (format) {
    case GraphFormat::Dot: write_dot(graph, sink); break;
    case GraphFormat::GraphML: write_graphml(graph, sink); break;
    case GraphFormat::Json: write_json(graph, sink); break;
  }
  sink.flush();
  if (!sink) throw Error(ErrorCode::IoError, "failed to write graph export");
}

}  // namespace quadratis
