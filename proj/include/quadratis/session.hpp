#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "quadratis/puzzle.hpp"
#include "quadratis/solver.hpp"
#include "quadratis/state_code.hpp"

namespace quadratis {

using NodeId = std::uint32_t;

struct ExploredNode {
  NodeId id = 0;
  Configuration colors;
  // Distance to home is only known for home itself.
  bool depth_unknown = true;

  friend bool operator==(const ExploredNode&, const ExploredNode&) = default;
};

enum class DeltaKind { Start, Move, Jump };

// One step of a session's explored graph. Seq 0 (kind Start) introduces the
// start node; folding all deltas in order over an empty graph reproduces the
// session's explored graph.
struct GraphDelta {
  std::uint64_t seq = 0;
  DeltaKind kind = DeltaKind::Move;
  std::optional<ExploredNode> new_node;
  std::optional<std::pair<NodeId, NodeId>> new_edge;
  std::optional<NodeId> revisit;
  std::optional<MoveSpec> move_echo;
  NodeId current = 0;
  bool solved = false;
  std::int64_t timestamp_ms = 0;
  std::optional<std::uint64_t> seed;  // on shuffle jumps
};

nlohmann::json to_json(const GraphDelta& delta);
GraphDelta delta_from_json(const nlohmann::json& j);

// Nodes/edges document of an explored graph, or the fold of a delta list.
struct ExploredGraph {
  std::vector<ExploredNode> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;  // first < second
  NodeId current = 0;

  void apply(const GraphDelta& delta);
  nlohmann::json to_json() const;
  friend bool operator==(const ExploredGraph&, const ExploredGraph&) = default;
};

struct MoveLogEntry {
  MoveSpec move;
  std::int64_t timestamp_ms = 0;
};

struct SessionOptions {
  std::optional<std::size_t> shuffle_moves;
  std::optional<std::uint64_t> seed;
  std::optional<bool> reveal_shuffle_path;
};

struct SessionSummary {
  std::string id;
  std::string puzzle_id;
  Configuration start;
  Configuration current;
  std::size_t move_count = 0;
  bool solved = false;
  std::size_t explored_nodes = 0;
  std::size_t explored_edges = 0;
  std::uint64_t seed = 0;
  std::int64_t created_at_ms = 0;
  std::uint64_t last_seq = 0;

  nlohmann::json to_json() const;
};

struct PuzzleEntry {
  std::string id;
  std::shared_ptr<const Puzzle> puzzle;
};

struct ServiceOptions {
  std::optional<std::filesystem::path> state_file;
  std::optional<std::filesystem::path> puzzle_dir;
  bool reveal_shuffle_path = false;
};

// Thread-safe registry of puzzles and play sessions. Moves within a session
// are serialized; separate sessions never share mutable state.
class SessionManager {
 public:
  explicit SessionManager(ServiceOptions options = {});
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  // Registers every *.json puzzle of a directory under its file stem.
  void load_puzzle_dir(const std::filesystem::path& dir);
  std::string register_puzzle(const Puzzle& puzzle, std::optional<std::string> id = std::nullopt);
  std::vector<PuzzleEntry> list_puzzles() const;
  std::shared_ptr<const Puzzle> puzzle(const std::string& id) const;

  SessionSummary create_session(const std::string& puzzle_id, const SessionOptions& options = {});
  GraphDelta play_move(const std::string& session_id, const MoveSpec& move);
  GraphDelta reset_session(const std::string& session_id);
  GraphDelta shuffle_session(const std::string& session_id, std::size_t moves, std::optional<std::uint64_t> seed);

  SessionSummary session(const std::string& session_id) const;
  ExploredGraph explored_graph(const std::string& session_id) const;
  std::vector<MoveLogEntry> move_log(const std::string& session_id) const;
  std::optional<Hint> hint(const std::string& session_id, std::size_t budget) const;
  std::vector<std::string> session_ids() const;

  // Deltas with seq >= since. Blocks up to `timeout` when none are available.
  std::vector<GraphDelta> deltas_since(const std::string& session_id, std::uint64_t since,
                                       std::chrono::milliseconds timeout = std::chrono::milliseconds{0}) const;

  // Wakes every blocked deltas_since call.
  void shutdown();

 private:
  struct Session;

  std::shared_ptr<Session> find_session(const std::string& id) const;
  GraphDelta record(Session& s, GraphDelta delta);
  GraphDelta jump_to(Session& s, const Configuration& target, std::optional<std::uint64_t> seed);
  void persist(const nlohmann::json& line);
  void restore(const std::filesystem::path& file);
  std::string fresh_session_id();

  ServiceOptions options_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<const Puzzle>> puzzles_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex persist_mutex_;
  std::ofstream journal_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
  std::atomic<bool> stopping_{false};
};

}  // namespace quadratis
