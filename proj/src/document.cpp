#include "quadratis/document.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "quadratis/error.hpp"

namespace quadratis {

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, "missing field '" + context + key + "'", context + key);
  }
  return j.at(key);
}

template <typename T>
T field_as(const json& j, const char* key, const std::string& context) {
  const json& v = require(j, key, context);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::ParseError, "field '" + context + key + "' has the wrong type", context + key);
  }
}

Permutation permutation_field(const json& j, const char* key) {
  return field_as<Permutation>(j, key, "pasting.");
}

}  // namespace

PuzzleDocument puzzle_document_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "puzzle document must be a JSON object");
  PuzzleDocument doc;
  doc.name = field_as<std::string>(j, "name", "");

  const json& squares = require(j, "squares", "");
  if (!squares.is_array()) throw Error(ErrorCode::ParseError, "field 'squares' must be an array", "squares");
  for (std::size_t k = 0; k < squares.size(); ++k) {
    const std::string ctx = "squares[" + std::to_string(k) + "].";
    doc.squares.push_back({field_as<SquareId>(squares[k], "id", ctx), field_as<int>(squares[k], "x", ctx),
                           field_as<int>(squares[k], "y", ctx)});
  }

  const json& pasting = require(j, "pasting", "");
  if (pasting.is_string()) {
    if (pasting.get<std::string>() != "standard") {
      throw Error(ErrorCode::ParseError, "pasting must be \"standard\" or {right, up}", "pasting");
    }
  } else if (pasting.is_object()) {
    doc.pasting = ExplicitPasting{permutation_field(pasting, "right"), permutation_field(pasting, "up")};
  } else {
    throw Error(ErrorCode::ParseError, "pasting must be \"standard\" or {right, up}", "pasting");
  }

  const json& colors = require(j, "colors", "");
  if (!colors.is_array()) throw Error(ErrorCode::ParseError, "field 'colors' must be an array", "colors");
  for (std::size_t k = 0; k < colors.size(); ++k) {
    const std::string ctx = "colors[" + std::to_string(k) + "].";
    doc.colors.push_back({field_as<std::string>(colors[k], "name", ctx), field_as<std::string>(colors[k], "rgb", ctx),
                          field_as<std::size_t>(colors[k], "count", ctx)});
  }
  doc.home = field_as<std::vector<int>>(j, "home", "");
  return doc;
}

PuzzleDocument parse_puzzle_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  return puzzle_document_from_json(j);
}

json to_json(const PuzzleDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["squares"] = json::array();
  for (const auto& s : doc.squares) j["squares"].push_back({{"id", s.id}, {"x", s.x}, {"y", s.y}});
  if (doc.pasting) {
    j["pasting"] = {{"right", doc.pasting->right}, {"up", doc.pasting->up}};
  } else {
    j["pasting"] = "standard";
  }
  j["colors"] = json::array();
  for (const auto& c : doc.colors) j["colors"].push_back({{"name", c.name}, {"rgb", c.rgb}, {"count", c.count}});
  j["home"] = doc.home;
  return j;
}

Puzzle puzzle_from_document(const PuzzleDocument& doc) {
  const std::size_t n = doc.squares.size();
  if (n == 0) throw Error(ErrorCode::ValidationError, "square id invariant violated: no squares", "squares");
  std::vector<Cell> placement(n);
  std::vector<bool> seen(n, false);
  for (const auto& s : doc.squares) {
    if (s.id >= n || seen[s.id]) {
      throw Error(ErrorCode::ValidationError,
                  "square id invariant violated: ids must be exactly 0.." + std::to_string(n - 1), "squares");
    }
    seen[s.id] = true;
    placement[s.id] = {s.x, s.y};
  }

  std::optional<Board> board;
  try {
    if (doc.pasting) {
      board = board_from_permutations(n, doc.pasting->right, doc.pasting->up, placement);
    } else {
      // Standard pasting is computed in row-major ids, then relabelled to the document's ids.
      const Polyomino shape(placement);
      const Board canonical = standard_pasting(shape);
      std::map<std::pair<int, int>, SquareId> id_at;
      for (SquareId id = 0; id < n; ++id) id_at[{placement[id].x, placement[id].y}] = id;
      std::vector<SquareId> doc_id(n);
      for (SquareId c = 0; c < n; ++c) doc_id[c] = id_at.at({shape.cell(c).x, shape.cell(c).y});
      Permutation right(n), up(n);
      for (SquareId c = 0; c < n; ++c) {
        right[doc_id[c]] = doc_id[canonical.right()[c]];
        up[doc_id[c]] = doc_id[canonical.up()[c]];
      }
      board = Board(std::move(right), std::move(up), placement);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAPermutation) {
      throw Error(ErrorCode::ValidationError, std::string("pasting permutation invariant violated: ") + e.what(),
                  e.field());
    }
    throw;
  }

  Configuration home;
  for (int c : doc.home) {
    if (c < 0 || c >= static_cast<int>(doc.colors.size())) {
      throw Error(ErrorCode::ValidationError, "home color index " + std::to_string(c) + " out of range", "home");
    }
    home.colors.push_back(static_cast<ColorIndex>(c));
  }
  ColorScheme scheme(doc.colors);
  if (scheme.total() != n) {
    throw Error(ErrorCode::ValidationError,
                "color count invariant violated: counts sum to " + std::to_string(scheme.total()) + " but there are " +
                    std::to_string(n) + " squares",
                "colors");
  }
  return Puzzle(doc.name, std::move(*board), std::move(scheme), std::move(home));
}

PuzzleDocument document_from_puzzle(const Puzzle& puzzle) {
  PuzzleDocument doc;
  doc.name = puzzle.name();
  const Board& board = puzzle.board();
  if (board.placement()) {
    for (SquareId id = 0; id < board.size(); ++id) {
      const Cell& c = (*board.placement())[id];
      doc.squares.push_back({id, c.x, c.y});
    }
  } else {
    // Without a placement, lay squares out in one row.
    for (SquareId id = 0; id < board.size(); ++id) doc.squares.push_back({id, static_cast<int>(id), 0});
  }
  doc.pasting = ExplicitPasting{board.right(), board.up()};
  try {
    PuzzleDocument standard = doc;
    standard.pasting.reset();
    standard.colors = puzzle.scheme().colors();
    for (ColorIndex c : puzzle.home().colors) standard.home.push_back(c);
    if (puzzle_from_document(standard).board() == board) doc.pasting.reset();
  } catch (const Error&) {
    // Placement is not a valid polyomino; keep the explicit pasting.
  }
  doc.colors = puzzle.scheme().colors();
  for (ColorIndex c : puzzle.home().colors) doc.home.push_back(c);
  return doc;
}

Puzzle load_puzzle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open puzzle file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return puzzle_from_document(parse_puzzle_document(buffer.str()));
}

void save_puzzle(const Puzzle& puzzle, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << to_json(document_from_puzzle(puzzle)).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "cannot write puzzle file " + path.string());
}

json puzzle_descriptor(const Puzzle& puzzle) {
  json j = to_json(document_from_puzzle(puzzle));
  for (Axis axis : {Axis::Horizontal, Axis::Vertical}) j["cycles"][std::string(to_string(axis))] = movable_cycles(puzzle.board(), axis);
  j["moves"] = json::array();
  for (const MoveSpec& mv : puzzle.moves().moves()) j["moves"].push_back(to_json(mv));
  return j;
}

json to_json(const MoveSpec& mv) {
  return {{"axis", to_string(mv.axis)}, {"cycle_id", mv.cycle_id}, {"direction", to_string(mv.direction)}};
}

MoveSpec move_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ValidationError, "move must be an object");
  MoveSpec mv;
  const auto axis = j.value("axis", std::string{});
  if (axis == "horizontal") {
    mv.axis = Axis::Horizontal;
  } else if (axis == "vertical") {
    mv.axis = Axis::Vertical;
  } else {
    throw Error(ErrorCode::ValidationError, "axis must be \"horizontal\" or \"vertical\"", "axis");
  }
  if (!j.contains("cycle_id") || !j["cycle_id"].is_number_integer() || j["cycle_id"].get<long long>() < 0) {
    throw Error(ErrorCode::ValidationError, "cycle_id must be a nonnegative integer", "cycle_id");
  }
  mv.cycle_id = j["cycle_id"].get<std::size_t>();
  const auto direction = j.value("direction", std::string{"forward"});
  if (direction == "forward") {
    mv.direction = Direction::Forward;
  } else if (direction == "backward") {
    mv.direction = Direction::Backward;
  } else {
    throw Error(ErrorCode::ValidationError, "direction must be \"forward\" or \"backward\"", "direction");
  }
  return mv;
}

json to_json(const Configuration& cfg) {
  return std::vector<int>(cfg.colors.begin(), cfg.colors.end());
}

Configuration configuration_from_json(const json& j) {
  const json& colors = j.is_object() && j.contains("colors") ? j["colors"] : j;
  if (!colors.is_array()) throw Error(ErrorCode::ParseError, "state must be a color array", "colors");
  Configuration cfg;
  for (const json& c : colors) {
    if (!c.is_number_integer() || c.get<int>() < 0 || c.get<int>() > 255) {
      throw Error(ErrorCode::ParseError, "colors must be small nonnegative integers", "colors");
    }
    cfg.colors.push_back(static_cast<ColorIndex>(c.get<int>()));
  }
  return cfg;
}

}  // namespace quadratis
