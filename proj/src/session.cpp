#include "quadratis/session.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "quadratis/document.hpp"
#include "quadratis/error.hpp"
#include "quadratis/rng.hpp"

namespace quadratis {

using nlohmann::json;

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string_view to_string(DeltaKind kind) {
  switch (kind) {
    case DeltaKind::Start: return "start";
    case DeltaKind::Move: return "move";
    case DeltaKind::Jump: return "jump";
  }
  return "move";
}

DeltaKind kind_from(const std::string& s) {
  if (s == "start") return DeltaKind::Start;
  if (s == "jump") return DeltaKind::Jump;
  return DeltaKind::Move;
}

json node_json(const ExploredNode& n) {
  json j{{"id", n.id}, {"colors", to_json(n.colors)}, {"depth_unknown", n.depth_unknown}};
  if (!n.depth_unknown) j["depth"] = 0;
  return j;
}

ExploredNode node_from(const json& j) {
  return {j.at("id").get<NodeId>(), configuration_from_json(j.at("colors")), j.at("depth_unknown").get<bool>()};
}

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  return out.empty() ? "puzzle" : out;
}

}  // namespace

json to_json(const GraphDelta& d) {
  json j{{"seq", d.seq},
         {"kind", to_string(d.kind)},
         {"new_node", d.new_node ? node_json(*d.new_node) : json(nullptr)},
         {"new_edge", d.new_edge ? json{d.new_edge->first, d.new_edge->second} : json(nullptr)},
         {"revisit", d.revisit ? json(*d.revisit) : json(nullptr)},
         {"move_echo", d.move_echo ? to_json(*d.move_echo) : json(nullptr)},
         {"current", d.current},
         {"solved", d.solved},
         {"timestamp", d.timestamp_ms}};
  if (d.seed) j["seed"] = *d.seed;
  return j;
}

GraphDelta delta_from_json(const json& j) {
  GraphDelta d;
  d.seq = j.at("seq").get<std::uint64_t>();
  d.kind = kind_from(j.at("kind").get<std::string>());
  if (!j.at("new_node").is_null()) d.new_node = node_from(j.at("new_node"));
  if (!j.at("new_edge").is_null()) d.new_edge = {j.at("new_edge")[0].get<NodeId>(), j.at("new_edge")[1].get<NodeId>()};
  if (!j.at("revisit").is_null()) d.revisit = j.at("revisit").get<NodeId>();
  if (!j.at("move_echo").is_null()) d.move_echo = move_from_json(j.at("move_echo"));
  d.current = j.at("current").get<NodeId>();
  d.solved = j.at("solved").get<bool>();
  d.timestamp_ms = j.value("timestamp", std::int64_t{0});
  if (j.contains("seed")) d.seed = j["seed"].get<std::uint64_t>();
  return d;
}

void ExploredGraph::apply(const GraphDelta& delta) {
  if (delta.new_node) {
    if (delta.new_node->id != nodes.size()) throw std::logic_error("delta node ids must be dense");
    nodes.push_back(*delta.new_node);
  }
  if (delta.new_edge) edges.insert(std::minmax(delta.new_edge->first, delta.new_edge->second));
  current = delta.current;
}

json ExploredGraph::to_json() const {
  json j;
  j["nodes"] = json::array();
  for (const ExploredNode& n : nodes) j["nodes"].push_back(node_json(n));
  j["edges"] = json::array();
  for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
  j["current"] = current;
  return j;
}

json SessionSummary::to_json() const {
  return {{"id", id},
          {"puzzle_id", puzzle_id},
          {"start", quadratis::to_json(start)},
          {"current", quadratis::to_json(current)},
          {"move_count", move_count},
          {"solved", solved},
          {"explored", {{"nodes", explored_nodes}, {"edges", explored_edges}}},
          {"seed", seed},
          {"rng", Rng::kAlgorithm},
          {"created_at", created_at_ms},
          {"last_seq", last_seq}};
}

struct SessionManager::Session {
  std::string id;
  std::string puzzle_id;
  std::shared_ptr<const Puzzle> puzzle;
  StateCodec codec;
  Configuration start;
  Configuration current;
  std::vector<MoveLogEntry> log;
  ExploredGraph graph;
  std::unordered_map<StateCode, NodeId> node_ids;
  std::vector<GraphDelta> deltas;
  std::uint64_t seed = 0;
  std::int64_t created_at = 0;
  bool reveal = false;
  Configuration created_start;
  std::size_t shuffle_moves = 0;
  mutable std::mutex mutex;
  mutable std::condition_variable changed;

  Session(std::string session_id, std::string pid, std::shared_ptr<const Puzzle> p)
      : id(std::move(session_id)),
        puzzle_id(std::move(pid)),
        puzzle(std::move(p)),
        codec(puzzle->board().size(), puzzle->scheme().num_colors()) {}

  // Fills node/edge/revisit fields for arriving at `state` from node `from`.
  void visit(const Configuration& state, std::optional<NodeId> from, GraphDelta& d) {
    StateCode code = codec.encode(state);
    auto it = node_ids.find(code);
    if (it == node_ids.end()) {
      const auto id = static_cast<NodeId>(node_ids.size());
      node_ids.emplace(std::move(code), id);
      d.new_node = ExploredNode{id, state, state != puzzle->home()};
      if (from) d.new_edge = {*from, id};
      d.current = id;
      return;
    }
    const NodeId id = it->second;
    d.revisit = id;
    d.current = id;
    if (from && *from != id && !graph.edges.contains(std::minmax(*from, id))) d.new_edge = {*from, id};
  }

  SessionSummary summary() const {
    SessionSummary s;
    s.id = id;
    s.puzzle_id = puzzle_id;
    s.start = start;
    s.current = current;
    s.move_count = log.size();
    s.solved = current == puzzle->home();
    s.explored_nodes = graph.nodes.size();
    s.explored_edges = graph.edges.size();
    s.seed = seed;
    s.created_at_ms = created_at;
    s.last_seq = deltas.empty() ? 0 : deltas.back().seq;
    return s;
  }

  // Folds a delta into the session state; shared by live play and restore.
  void absorb(const GraphDelta& d) {
    if (d.new_node) node_ids.emplace(codec.encode(d.new_node->colors), d.new_node->id);
    graph.apply(d);
    current = graph.nodes.at(d.current).colors;
    switch (d.kind) {
      case DeltaKind::Start: break;
      case DeltaKind::Move: log.push_back({*d.move_echo, d.timestamp_ms}); break;
      case DeltaKind::Jump:
        start = current;
        log.clear();
        if (d.seed) seed = *d.seed;
        break;
    }
    deltas.push_back(d);
  }
};

SessionManager::SessionManager(ServiceOptions options) : options_(std::move(options)) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ static_cast<std::uint64_t>(now_ms());
  if (options_.puzzle_dir && std::filesystem::exists(*options_.puzzle_dir)) load_puzzle_dir(*options_.puzzle_dir);
  if (options_.state_file) {
    if (std::filesystem::exists(*options_.state_file)) restore(*options_.state_file);
    journal_.open(*options_.state_file, std::ios::app);
    if (!journal_) throw Error(ErrorCode::IoError, "cannot open state file " + options_.state_file->string());
  }
}

SessionManager::~SessionManager() { shutdown(); }

void SessionManager::shutdown() {
  stopping_ = true;
  std::shared_lock lock(registry_mutex_);
  for (auto& [id, s] : sessions_) {
    std::lock_guard session_lock(s->mutex);
    s->changed.notify_all();
  }
}

std::string SessionManager::fresh_session_id() {
  std::lock_guard lock(id_mutex_);
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << splitmix64(id_state_++);
  return out.str();
}

void SessionManager::persist(const json& line) {
  if (!options_.state_file) return;
  std::lock_guard lock(persist_mutex_);
  journal_ << line.dump() << '\n';
  journal_.flush();
  if (!journal_) throw Error(ErrorCode::IoError, "failed to append to state file");
}

void SessionManager::load_puzzle_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json" && entry.path().filename().string().find(".schema.") == std::string::npos)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::unique_lock lock(registry_mutex_);
  for (const auto& f : files) puzzles_[f.stem().string()] = std::make_shared<const Puzzle>(load_puzzle(f));
}

std::string SessionManager::register_puzzle(const Puzzle& puzzle, std::optional<std::string> id) {
  const std::string key = id ? *id : slug(puzzle.name());
  if (key.empty() || key.find_first_of("/\\.") != std::string::npos) {
    throw Error(ErrorCode::ValidationError, "puzzle id must be a plain name", "id");
  }
  {
    std::unique_lock lock(registry_mutex_);
    if (puzzles_.contains(key)) throw Error(ErrorCode::ValidationError, "puzzle id '" + key + "' already exists", "id");
    puzzles_[key] = std::make_shared<const Puzzle>(puzzle);
  }
  if (options_.puzzle_dir) {
    std::filesystem::create_directories(*options_.puzzle_dir);
    save_puzzle(puzzle, *options_.puzzle_dir / (key + ".json"));
  }
  persist({{"type", "puzzle"}, {"id", key}, {"document", to_json(document_from_puzzle(puzzle))}});
  return key;
}

std::vector<PuzzleEntry> SessionManager::list_puzzles() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<PuzzleEntry> out;
  for (const auto& [id, p] : puzzles_) out.push_back({id, p});
  return out;
}

std::shared_ptr<const Puzzle> SessionManager::puzzle(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = puzzles_.find(id);
  if (it == puzzles_.end()) throw Error(ErrorCode::UnknownPuzzle, "unknown puzzle '" + id + "'", "puzzle_id");
  return it->second;
}

std::shared_ptr<SessionManager::Session> SessionManager::find_session(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'", "session_id");
  return it->second;
}

GraphDelta SessionManager::record(Session& s, GraphDelta delta) {
  delta.seq = s.deltas.size();
  delta.timestamp_ms = now_ms();
  delta.solved = s.puzzle->home() == (delta.new_node ? delta.new_node->colors : s.graph.nodes.at(delta.current).colors);
  s.absorb(delta);
  persist({{"type", "delta"}, {"session", s.id}, {"delta", to_json(delta)}});
  s.changed.notify_all();
  return delta;
}

SessionSummary SessionManager::create_session(const std::string& puzzle_id, const SessionOptions& options) {
  auto p = puzzle(puzzle_id);
  const std::size_t m = options.shuffle_moves.value_or(0);
  std::uint64_t seed;
  if (options.seed) {
    seed = *options.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  const bool reveal = options.reveal_shuffle_path.value_or(options_.reveal_shuffle_path);
  const ShuffleResult shuffled = shuffle(*p, m, seed);

  auto s = std::make_shared<Session>(fresh_session_id(), puzzle_id, p);
  s->seed = seed;
  s->created_at = now_ms();
  s->reveal = reveal;
  s->start = shuffled.state;
  s->created_start = shuffled.state;
  s->shuffle_moves = m;
  s->current = reveal ? p->home() : shuffled.state;

  // The session is built privately and published once complete, so no other
  // thread can observe it half-initialized.
  persist({{"type", "create"},
           {"session", s->id},
           {"puzzle_id", puzzle_id},
           {"seed", seed},
           {"shuffle_moves", m},
           {"reveal_shuffle_path", reveal},
           {"rng", Rng::kAlgorithm},
           {"created_at", s->created_at},
           {"start", to_json(shuffled.state)}});

  GraphDelta first;
  first.kind = DeltaKind::Start;
  s->visit(s->current, std::nullopt, first);
  record(*s, first);
  if (reveal) {
    // Walk the shuffle path from home so it appears in the explored graph.
    Configuration state = p->home();
    for (const MoveSpec& mv : shuffled.moves) {
      state = apply_move(state, mv, p->board());
      GraphDelta d;
      d.kind = DeltaKind::Start;
      d.move_echo = mv;
      s->visit(state, s->graph.current, d);
      record(*s, d);
    }
  }
  s->start = shuffled.state;
  {
    std::unique_lock registry(registry_mutex_);
    sessions_[s->id] = s;
  }
  return s->summary();
}

GraphDelta SessionManager::play_move(const std::string& session_id, const MoveSpec& move) {
  auto s = find_session(session_id);
  std::lock_guard lock(s->mutex);
  s->puzzle->moves().index_of(move);  // throws InvalidMove
  const Configuration next = apply_move(s->current, move, s->puzzle->board());
  GraphDelta d;
  d.kind = DeltaKind::Move;
  d.move_echo = move;
  s->visit(next, s->graph.current, d);
  return record(*s, d);
}

GraphDelta SessionManager::jump_to(Session& s, const Configuration& target, std::optional<std::uint64_t> seed) {
  GraphDelta d;
  d.kind = DeltaKind::Jump;
  d.seed = seed;
  s.visit(target, std::nullopt, d);
  return record(s, d);
}

GraphDelta SessionManager::reset_session(const std::string& session_id) {
  auto s = find_session(session_id);
  std::lock_guard lock(s->mutex);
  return jump_to(*s, s->start, std::nullopt);
}

GraphDelta SessionManager::shuffle_session(const std::string& session_id, std::size_t moves,
                                           std::optional<std::uint64_t> seed) {
  auto s = find_session(session_id);
  std::lock_guard lock(s->mutex);
  std::uint64_t chosen;
  if (seed) {
    chosen = *seed;
  } else {
    std::random_device rd;
    chosen = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  return jump_to(*s, shuffle(*s->puzzle, moves, chosen).state, chosen);
}

SessionSummary SessionManager::session(const std::string& session_id) const {
  auto s = find_session(session_id);
  std::lock_guard lock(s->mutex);
  return s->summary();
}

ExploredGraph SessionManager::explored_graph(const std::string& session_id) const {
  auto s = find_session(session_id);
  std::lock_guard lock(s->mutex);
  return s->graph;
}

std::vector<MoveLogEntry> SessionManager::move_log(const std::string& session_id) const {
  auto s = find_session(session_id);
  std::lock_guard lock(s->mutex);
  return s->log;
}

std::optional<Hint> SessionManager::hint(const std::string& session_id, std::size_t budget) const {
  auto s = find_session(session_id);
  Configuration current;
  {
    std::lock_guard lock(s->mutex);
    current = s->current;
  }
  return quadratis::hint(*s->puzzle, current, budget);
}

std::vector<std::string> SessionManager::session_ids() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

std::vector<GraphDelta> SessionManager::deltas_since(const std::string& session_id, std::uint64_t since,
                                                     std::chrono::milliseconds timeout) const {
  auto s = find_session(session_id);
  std::unique_lock lock(s->mutex);
  if (timeout.count() > 0) {
    // A system_clock deadline keeps the wait on pthread_cond_timedwait, which
    // thread sanitizers understand; this is a poll bound, so clock jumps are harmless.
    s->changed.wait_until(lock, std::chrono::system_clock::now() + timeout,
                          [&] { return s->deltas.size() > since || stopping_.load(); });
  }
  if (since >= s->deltas.size()) return {};
  return {s->deltas.begin() + static_cast<std::ptrdiff_t>(since), s->deltas.end()};
}

namespace {

// The start recorded at creation time; later jumps replace Session::start.
Configuration first_start(const auto& s) { return s.created_start; }

}  // namespace

void SessionManager::restore(const std::filesystem::path& file) {
  std::ifstream in(file);
  std::vector<json> kept_puzzles;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "puzzle") {
        const std::string id = j.at("id").get<std::string>();
        auto p = std::make_shared<const Puzzle>(puzzle_from_document(puzzle_document_from_json(j.at("document"))));
        puzzles_[id] = p;
        kept_puzzles.push_back(j);
      } else if (type == "create") {
        const std::string pid = j.at("puzzle_id").get<std::string>();
        auto it = puzzles_.find(pid);
        if (it == puzzles_.end()) continue;
        auto s = std::make_shared<Session>(j.at("session").get<std::string>(), pid, it->second);
        s->seed = j.at("seed").get<std::uint64_t>();
        s->created_at = j.at("created_at").get<std::int64_t>();
        s->reveal = j.value("reveal_shuffle_path", false);
        s->start = configuration_from_json(j.at("start"));
        s->created_start = s->start;
        s->shuffle_moves = j.value("shuffle_moves", std::size_t{0});
        sessions_[s->id] = s;
      } else if (type == "delta") {
        auto it = sessions_.find(j.at("session").get<std::string>());
        if (it == sessions_.end()) continue;
        Session& s = *it->second;
        const GraphDelta d = delta_from_json(j.at("delta"));
        if (d.seq != s.deltas.size()) continue;
        s.absorb(d);
      }
    } catch (const std::exception&) {
      // Torn or foreign line; compaction below drops it.
    }
  }
  // Compaction: rewrite only well-formed, still-relevant lines.
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const json& p : kept_puzzles) out << p.dump() << '\n';
    for (const auto& [id, s] : sessions_) {
      out << json{{"type", "create"},
                  {"session", id},
                  {"puzzle_id", s->puzzle_id},
                  {"seed", s->seed},
                  {"shuffle_moves", s->shuffle_moves},
                  {"reveal_shuffle_path", s->reveal},
                  {"rng", Rng::kAlgorithm},
                  {"created_at", s->created_at},
                  {"start", to_json(first_start(*s))}}
                 .dump()
          << '\n';
      for (const GraphDelta& d : s->deltas) out << json{{"type", "delta"}, {"session", id}, {"delta", to_json(d)}}.dump() << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "cannot compact state file " + file.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace quadratis
