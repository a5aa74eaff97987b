#include "quadratis/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "quadratis/document.hpp"
#include "quadratis/error.hpp"
#include "quadratis/http_service.hpp"
#include "quadratis/random_surfaces.hpp"
#include "quadratis/solver.hpp"
#include "quadratis/space.hpp"

namespace quadratis {

using nlohmann::json;

namespace {

std::string join(const auto& values, const char* sep = " ") {
  std::ostringstream out;
  bool first = true;
  for (const auto& v : values) {
    if (!first) out << sep;
    out << +v;
    first = false;
  }
  return out.str();
}

std::string cycles_text(const std::vector<Cycle>& cycles) {
  std::string s;
  for (const Cycle& c : cycles) s += "(" + join(c) + ")";
  return s;
}

std::string move_text(const MoveSpec& mv) {
  return std::string(to_string(mv.axis)) + " " + std::to_string(mv.cycle_id) + " " + std::string(to_string(mv.direction));
}

json error_json(std::string_view code, const std::string& message, const std::string& field = {}) {
  json j{{"code", code}, {"message", message}};
  if (!field.empty()) j["field"] = field;
  return json{{"error", j}};
}

struct Analyze {
  std::string path;
};

struct Enumerate {
  std::string path;
  bool all_colorings = false;
  std::size_t max_states = 10'000'000;
  std::vector<std::string> export_to;
  std::size_t diameter_budget = 100'000;
};

struct Solve {
  std::string path;
  std::string state_file;
  std::optional<std::size_t> shuffle_moves;
  std::uint64_t seed = 0;
  std::string method = "bfs";
  std::size_t budget = 10'000'000;
};

struct RandomSurfaces {
  std::vector<std::size_t> n;
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  bool exact = false;
  unsigned workers = 0;
};

struct Serve {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string puzzle_dir;
  std::string state_file;
  bool reveal_shuffle_path = false;
};

int cmd_analyze(const Analyze& a, bool as_json, std::ostream& out) {
  const Puzzle p = load_puzzle(a.path);
  const Board& b = p.board();
  const SurfaceInvariants inv = surface_invariants(b);
  const BigInt colorings = count_all_colorings(b, p.scheme());
  if (as_json) {
    json comps = json::array();
    for (const ComponentTopology& c : inv.components) {
      comps.push_back({{"squares", c.squares},
                       {"vertices", c.num_vertices},
                       {"euler_characteristic", c.euler_characteristic},
                       {"genus", c.genus}});
    }
    out << json{{"name", p.name()},
                {"squares", b.size()},
                {"cycles", {{"horizontal", b.horizontal_cycles()}, {"vertical", b.vertical_cycles()}}},
                {"moves", p.moves().size()},
                {"vertices", inv.num_vertices},
                {"edges", inv.num_edges},
                {"faces", inv.num_faces},
                {"euler_characteristic", inv.euler_characteristic},
                {"connected", inv.connected},
                {"genus", inv.genus ? json(*inv.genus) : json(nullptr)},
                {"components", comps},
                {"cone_angles", inv.cone_angles},
                {"colorings", colorings.str()}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "name: " << p.name() << '\n';
  out << "squares: " << b.size() << '\n';
  out << "horizontal cycles: " << cycles_text(b.horizontal_cycles()) << '\n';
  out << "vertical cycles: " << cycles_text(b.vertical_cycles()) << '\n';
  out << "moves: " << p.moves().size() << '\n';
  out << "vertices: " << inv.num_vertices << '\n';
  out << "edges: " << inv.num_edges << '\n';
  out << "faces: " << inv.num_faces << '\n';
  out << "euler characteristic: " << inv.euler_characteristic << '\n';
  out << "connected: " << (inv.connected ? "yes" : "no") << '\n';
  if (inv.genus) {
    out << "genus: " << *inv.genus << '\n';
  } else {
    for (std::size_t i = 0; i < inv.components.size(); ++i) {
      out << "component " << i << ": squares " << inv.components[i].squares.size() << ", genus "
          << inv.components[i].genus << '\n';
    }
  }
  out << "cone angles: " << join(inv.cone_angles) << '\n';
  out << "colorings: " << colorings.str() << '\n';
  return 0;
}

int cmd_enumerate(const Enumerate& e, bool as_json, std::ostream& out, std::ostream& err) {
  const Puzzle p = load_puzzle(e.path);
  std::optional<GraphFormat> format;
  if (!e.export_to.empty()) {
    format = parse_graph_format(e.export_to[0]);
    if (!format) throw Error(ErrorCode::ValidationError, "unknown export format '" + e.export_to[0] + "'", "export");
  }

  if (e.all_colorings) {
    const AllColoringsReport r = all_colorings_components(p.board(), p.scheme(), e.max_states);
    std::map<std::size_t, std::size_t, std::greater<>> sizes;
    for (const auto& c : r.components) ++sizes[c.size];
    if (as_json) {
      json comps = json::array();
      const StateCodec codec(p.board().size(), p.scheme().num_colors());
      for (const auto& c : r.components) {
        comps.push_back({{"size", c.size}, {"representative", to_json(codec.decode(c.representative))}});
      }
      out << json{{"colorings", r.num_colorings}, {"edges", r.num_edges}, {"components", comps}}.dump(2) << '\n';
    } else {
      out << "colorings: " << r.num_colorings << '\n';
      out << "edges: " << r.num_edges << '\n';
      out << "components: " << r.components.size() << '\n';
      out << "component sizes:";
      for (const auto& [size, count] : sizes) out << ' ' << size << 'x' << count;
      out << '\n';
    }
    return 0;
  }

  const PuzzleSpaceGraph g = enumerate_space(p, {.max_states = e.max_states});
  if (format) {
    std::ofstream file(e.export_to[1]);
    if (!file) throw Error(ErrorCode::IoError, "cannot open " + e.export_to[1], "export");
    export_graph(g, *format, file);
  }
  const SpaceReport r = space_report(g, e.diameter_budget);
  if (as_json) {
    json j{{"vertices", r.num_vertices},
           {"edges", r.num_edges},
           {"complete", r.complete},
           {"home_eccentricity", r.eccentricity_of_home},
           {"distance_histogram", r.distance_histogram},
           {"min_degree", r.min_degree},
           {"max_degree", r.max_degree}};
    if (r.diameter) j["diameter"] = {{"value", r.diameter->value}, {"exact", r.diameter->exact}};
    out << j.dump(2) << '\n';
  } else {
    out << "vertices: " << r.num_vertices << '\n';
    out << "edges: " << r.num_edges << '\n';
    out << "complete: " << (r.complete ? "yes" : "no") << '\n';
    if (r.diameter) {
      out << "diameter: " << r.diameter->value << (r.diameter->exact ? "" : " (lower bound)") << '\n';
    }
    out << "home eccentricity: " << r.eccentricity_of_home << (r.complete ? "" : " (explored part)") << '\n';
    out << "distance histogram: " << join(r.distance_histogram) << '\n';
    out << "degree range: " << r.min_degree << ".." << r.max_degree << '\n';
  }
  if (!r.complete) {
    err << error_json(to_string(ErrorCode::BudgetExceeded),
                      "state budget of " + std::to_string(e.max_states) + " reached; report covers a partial graph",
                      "max-states")
               .dump()
        << '\n';
    return 3;
  }
  return 0;
}

int cmd_solve(const Solve& s, bool as_json, std::ostream& out) {
  const Puzzle p = load_puzzle(s.path);
  Configuration start = p.home();
  if (!s.state_file.empty()) {
    std::ifstream in(s.state_file);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + s.state_file, "state");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("malformed state file: ") + e.what(), "state");
    }
    start = configuration_from_json(j);
    validate_configuration(start, p.scheme(), p.board().size());
  } else if (s.shuffle_moves) {
    start = shuffle(p, *s.shuffle_moves, s.seed).state;
  }
  Solution sol;
  if (s.method == "bfs") {
    sol = solve_bfs(p, start, s.budget);
  } else {
    sol = solve_idastar(p, start, s.budget);
  }
  const double ms = std::chrono::duration<double, std::milli>(sol.wall_time).count();
  if (as_json) {
    json moves = json::array();
    for (const MoveSpec& mv : sol.moves) moves.push_back(to_json(mv));
    out << json{{"start", to_json(start)},
                {"length", sol.moves.size()},
                {"moves", moves},
                {"optimal", sol.optimal},
                {"nodes_expanded", sol.nodes_expanded},
                {"wall_time_ms", ms}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "start: " << join(start.colors, ",") << '\n';
  out << "length: " << sol.moves.size() << '\n';
  for (std::size_t i = 0; i < sol.moves.size(); ++i) out << "  " << i + 1 << ". " << move_text(sol.moves[i]) << '\n';
  out << "optimal: " << (sol.optimal ? "yes" : "no") << '\n';
  out << "nodes expanded: " << sol.nodes_expanded << '\n';
  out << "time: " << std::fixed << std::setprecision(3) << ms << " ms\n";
  return 0;
}

int cmd_random_surfaces(const RandomSurfaces& r, bool as_json, std::ostream& out) {
  json rows = json::array();
  if (!as_json) {
    out << std::left << std::setw(4) << "n" << std::setw(10) << "trials" << std::setw(11) << "successes"
        << std::setw(10) << "p_hat" << std::setw(10) << "ci_low" << std::setw(10) << "ci_high";
    if (r.exact) out << "exact";
    out << '\n';
  }
  for (std::size_t n : r.n) {
    const ConnectivityEstimate e = estimate_connectivity(n, r.trials, r.seed, r.workers);
    std::optional<Rational> exact;
    if (r.exact) exact = exact_connectivity_probability(n);
    if (as_json) {
      json row{{"n", n},           {"trials", e.trials}, {"successes", e.successes}, {"p_hat", e.p_hat},
               {"ci_low", e.ci_low}, {"ci_high", e.ci_high}, {"seed", e.seed},       {"rng", Rng::kAlgorithm}};
      if (exact) {
        row["exact"] = {{"numerator", exact->numerator}, {"denominator", exact->denominator}, {"value", exact->value()}};
      }
      rows.push_back(row);
      continue;
    }
    out << std::left << std::setw(4) << n << std::setw(10) << e.trials << std::setw(11) << e.successes << std::fixed
        << std::setprecision(5) << std::setw(10) << e.p_hat << std::setw(10) << e.ci_low << std::setw(10) << e.ci_high;
    if (exact) out << exact->numerator << '/' << exact->denominator << " = " << exact->value();
    out << '\n';
  }
  if (as_json) out << rows.dump(2) << '\n';
  return 0;
}

HttpService* active_service = nullptr;

extern "C" void stop_on_signal(int) {
  if (active_service) active_service->stop();
}

int cmd_serve(const Serve& s, std::ostream& out) {
  ServiceOptions opts;
  if (!s.puzzle_dir.empty()) opts.puzzle_dir = s.puzzle_dir;
  if (!s.state_file.empty()) opts.state_file = s.state_file;
  opts.reveal_shuffle_path = s.reveal_shuffle_path;
  SessionManager manager(opts);
  HttpService service(manager);
  int port = s.port;
  if (port == 0) {
    port = service.bind_to_any_port(s.host);
    if (port < 0) throw Error(ErrorCode::IoError, "cannot bind " + s.host, "port");
  } else if (!service.bind(s.host, port)) {
    throw Error(ErrorCode::IoError, "cannot bind " + s.host + ":" + std::to_string(port), "port");
  }
  out << "listening on http://" << s.host << ':' << port << " with " << manager.list_puzzles().size()
      << " puzzles" << std::endl;
  active_service = &service;
  std::signal(SIGINT, stop_on_signal);
  std::signal(SIGTERM, stop_on_signal);
  service.listen_after_bind();
  active_service = nullptr;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratis puzzle engine and configuration-space lab", "quadratis"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");

  Analyze analyze;
  auto* a = app.add_subcommand("analyze", "Topology and move structure of a puzzle board");
  a->add_option("puzzle", analyze.path, "Puzzle file")->required();

  Enumerate enumerate;
  auto* e = app.add_subcommand("enumerate", "Enumerate the puzzle space reachable from home");
  e->add_option("puzzle", enumerate.path, "Puzzle file")->required();
  e->add_flag("--all-colorings", enumerate.all_colorings, "Partition every coloring into components");
  e->add_option("--max-states", enumerate.max_states, "State budget")->capture_default_str();
  e->add_option("--export", enumerate.export_to, "Write the graph: FORMAT PATH (dot, graphml, json)")
      ->expected(2)
      ->allow_extra_args(false);
  e->add_option("--diameter-budget", enumerate.diameter_budget, "Largest graph with an exact diameter")
      ->capture_default_str();

  Solve solve;
  auto* s = app.add_subcommand("solve", "Shortest solution from a given or shuffled state");
  s->add_option("puzzle", solve.path, "Puzzle file")->required();
  auto* state_opt = s->add_option("--state", solve.state_file, "JSON file with the start colors");
  auto* shuffle_opt = s->add_option("--shuffle", solve.shuffle_moves, "Shuffle home by this many moves");
  state_opt->excludes(shuffle_opt);
  s->add_option("--seed", solve.seed, "Shuffle seed")->capture_default_str();
  s->add_option("--method", solve.method, "Search method")->check(CLI::IsMember({"bfs", "idastar"}))->capture_default_str();
  s->add_option("--budget", solve.budget, "Node budget")->capture_default_str();

  RandomSurfaces random;
  auto* r = app.add_subcommand("random-surfaces", "Connectivity of randomly pasted squares");
  r->add_option("--n", random.n, "Square counts")->required()->check(CLI::PositiveNumber);
  r->add_option("--trials", random.trials, "Trials per n")->capture_default_str();
  r->add_option("--seed", random.seed, "Master seed")->capture_default_str();
  r->add_flag("--exact", random.exact, "Also compute the exact probability (n <= 7)");
  r->add_option("--workers", random.workers, "Worker threads (0 = all cores)")->capture_default_str();

  Serve serve;
  auto* v = app.add_subcommand("serve", "Run the HTTP session service");
  v->add_option("--port", serve.port, "TCP port (0 picks a free one)")->capture_default_str();
  v->add_option("--host", serve.host, "Bind address")->capture_default_str();
  v->add_option("--puzzle-dir", serve.puzzle_dir, "Puzzle library directory");
  v->add_option("--state-file", serve.state_file, "Append-only session journal");
  v->add_flag("--reveal-shuffle-path", serve.reveal_shuffle_path, "Show the shuffle path in new sessions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    if (code != 0) err << error_json("UsageError", pe.what()).dump() << '\n';
    return code;
  }

  try {
    if (*a) return cmd_analyze(analyze, as_json, out);
    if (*e) return cmd_enumerate(enumerate, as_json, out, err);
    if (*s) return cmd_solve(solve, as_json, out);
    if (*r) return cmd_random_surfaces(random, as_json, out);
    if (*v) return cmd_serve(serve, out);
  } catch (const Error& ex) {
    err << error_json(to_string(ex.code()), ex.what(), ex.field()).dump() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    err << error_json("InternalError", ex.what()).dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace quadratis
