#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "quadratis/document.hpp"
#include "quadratis/error.hpp"

using namespace quadratis;
namespace fs = std::filesystem;

namespace {

const fs::path kPuzzles = QUADRATIS_PUZZLE_DIR;

std::string read(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::IoError, "");
}

}  // namespace

TEST_CASE("bundled cross puzzle") {
  const Puzzle p = load_puzzle(kPuzzles / "cross-1-4-4.json");
  CHECK(p.name() == "cross-1-4-4");
  CHECK(p.board().size() == 9);
  CHECK(p.scheme().counts() == std::vector<std::size_t>{1, 4, 4});
  CHECK(surface_invariants(p.board()).genus == 2);
  CHECK(p.board().right() == Permutation{0, 1, 3, 4, 5, 6, 2, 7, 8});
}

TEST_CASE("every bundled puzzle loads and round-trips") {
  for (const char* name : {"chroma2.json", "chroma3.json", "square3-3-6.json", "cross-1-4-4.json", "grid5-hole.json"}) {
    CAPTURE(name);
    const PuzzleDocument doc = parse_puzzle_document(read(kPuzzles / name));
    CHECK(puzzle_document_from_json(to_json(doc)) == doc);
    const Puzzle p = puzzle_from_document(doc);
    CHECK_FALSE(document_from_puzzle(p).pasting.has_value());
    CHECK(document_from_puzzle(p) == doc);

    const fs::path tmp = fs::temp_directory_path() / ("quadratis-doc-" + std::string(name));
    save_puzzle(p, tmp);
    const Puzzle again = load_puzzle(tmp);
    CHECK(again.board() == p.board());
    CHECK(again.scheme() == p.scheme());
    CHECK(again.home() == p.home());
    fs::remove(tmp);
  }
}

TEST_CASE("explicit pasting equal to the standard one gives the same board") {
  PuzzleDocument doc = parse_puzzle_document(read(kPuzzles / "cross-1-4-4.json"));
  const Puzzle standard = puzzle_from_document(doc);
  doc.pasting = ExplicitPasting{standard.board().right(), standard.board().up()};
  const Puzzle explicit_form = puzzle_from_document(doc);
  CHECK(explicit_form.board() == standard.board());
  // Saving collapses it back to "standard".
  CHECK_FALSE(document_from_puzzle(explicit_form).pasting.has_value());
}

TEST_CASE("standard pasting honours the document's own square ids") {
  PuzzleDocument doc;
  doc.name = "2x2 reversed";
  doc.squares = {{0, 1, 1}, {1, 0, 1}, {2, 1, 0}, {3, 0, 0}};
  doc.colors = {{"a", "#000", 2}, {"b", "#fff", 2}};
  doc.home = {0, 0, 1, 1};
  const Puzzle p = puzzle_from_document(doc);
  CHECK(p.board().right() == Permutation{1, 0, 3, 2});
  CHECK(p.board().up() == Permutation{2, 3, 0, 1});
  CHECK((*p.board().placement())[0] == Cell{1, 1});
}

TEST_CASE("validation errors name the broken invariant") {
  PuzzleDocument doc = parse_puzzle_document(read(kPuzzles / "cross-1-4-4.json"));

  PuzzleDocument short_counts = doc;
  short_counts.colors[2].count = 3;
  const Error counts = error_of([&] { puzzle_from_document(short_counts); });
  CHECK(counts.code() == ErrorCode::ValidationError);
  CHECK(std::string(counts.what()).find("color count invariant") != std::string::npos);
  CHECK(counts.field() == "colors");

  PuzzleDocument bad_home = doc;
  bad_home.home[4] = 1;
  bad_home.home[2] = 0;
  CHECK_NOTHROW(puzzle_from_document(bad_home));
  bad_home.home[2] = 1;
  const Error home = error_of([&] { puzzle_from_document(bad_home); });
  CHECK(home.code() == ErrorCode::ValidationError);
  CHECK(home.field() == "home");

  PuzzleDocument bad_pasting = doc;
  bad_pasting.pasting = ExplicitPasting{{0, 0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  const Error pasting = error_of([&] { puzzle_from_document(bad_pasting); });
  CHECK(pasting.code() == ErrorCode::ValidationError);
  CHECK(std::string(pasting.what()).find("pasting permutation invariant") != std::string::npos);

  PuzzleDocument bad_ids = doc;
  bad_ids.squares[0].id = 5;
  CHECK(error_of([&] { puzzle_from_document(bad_ids); }).field() == "squares");
}

TEST_CASE("parse errors carry line or field context") {
  const Error syntax = error_of([] { parse_puzzle_document("{\n  \"name\": \"x\",\n  \"squares\": [,]\n}"); });
  CHECK(syntax.code() == ErrorCode::ParseError);
  CHECK(std::string(syntax.what()).find("line 3") != std::string::npos);

  const Error missing = error_of([] { parse_puzzle_document(R"({"name": "x", "squares": []})"); });
  CHECK(missing.code() == ErrorCode::ParseError);
  CHECK(missing.field() == "pasting");

  const Error wrong_type =
      error_of([] { parse_puzzle_document(R"({"name": "x", "squares": [{"id": 0, "x": "a", "y": 0}]})"); });
  CHECK(wrong_type.field() == "squares[0].x");

  const Error bad_pasting = error_of([] {
    parse_puzzle_document(R"({"name":"x","squares":[{"id":0,"x":0,"y":0}],"pasting":"twisted","colors":[],"home":[]})");
  });
  CHECK(bad_pasting.field() == "pasting");

  CHECK(error_of([] { load_puzzle("/nonexistent/puzzle.json"); }).code() == ErrorCode::IoError);
}

TEST_CASE("move and configuration json") {
  const MoveSpec mv{Axis::Vertical, 3, Direction::Backward};
  CHECK(to_json(mv) == nlohmann::json{{"axis", "vertical"}, {"cycle_id", 3}, {"direction", "backward"}});
  CHECK(move_from_json(to_json(mv)) == mv);
  CHECK(move_from_json(nlohmann::json{{"axis", "horizontal"}, {"cycle_id", 0}}).direction == Direction::Forward);
  CHECK(error_of([] { move_from_json(nlohmann::json{{"axis", "diagonal"}, {"cycle_id", 0}}); }).field() == "axis");
  CHECK(error_of([] { move_from_json(nlohmann::json{{"axis", "vertical"}, {"cycle_id", -1}}); }).field() == "cycle_id");
  CHECK(error_of([] {
          move_from_json(nlohmann::json{{"axis", "vertical"}, {"cycle_id", 1}, {"direction", "up"}});
        }).field() == "direction");

  const Configuration cfg{{2, 0, 1}};
  CHECK(configuration_from_json(to_json(cfg)) == cfg);
  CHECK(configuration_from_json(nlohmann::json{{"colors", {2, 0, 1}}}) == cfg);
  CHECK_THROWS_AS(configuration_from_json(nlohmann::json{"a"}), Error);
}

TEST_CASE("puzzle descriptor lists movable cycles and moves") {
  const auto d = puzzle_descriptor(load_puzzle(kPuzzles / "cross-1-4-4.json"));
  CHECK(d["cycles"]["horizontal"] == nlohmann::json{{2, 3, 4, 5, 6}});
  CHECK(d["cycles"]["vertical"] == nlohmann::json{{0, 1, 4, 7, 8}});
  CHECK(d["moves"].size() == 4);
  CHECK(d["pasting"] == "standard");
}
