#include "quadratis/http_service.hpp"

#include <atomic>

#include <httplib.h>

#include "quadratis/document.hpp"
#include "quadratis/error.hpp"

namespace quadratis {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownPuzzle:
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::Unsolvable:
    case ErrorCode::NoMovesAvailable:
    case ErrorCode::IncompleteGraph:
    case ErrorCode::StateNotInSpace:
      return 409;
    case ErrorCode::IoError:
      return 500;
    default:
      return 422;
  }
}

namespace {

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(const Error& e) {
  json j{{"code", to_string(e.code())}, {"message", e.what()}};
  if (!e.field().empty()) j["field"] = e.field();
  return j;
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON body: ") + e.what());
  }
}

template <class T>
std::optional<T> optional_field(const json& body, const char* name) {
  if (!body.contains(name) || body[name].is_null()) return std::nullopt;
  const json& v = body[name];
  if constexpr (std::is_same_v<T, std::uint64_t> || std::is_same_v<T, std::size_t>) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw Error(ErrorCode::ValidationError, std::string(name) + " must be a nonnegative integer", name);
    }
    return v.get<T>();
  } else {
    return v.get<T>();
  }
}

std::size_t size_param(const httplib::Request& req, const char* name, std::size_t fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string s = req.get_param_value(name);
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || s.starts_with('-')) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ValidationError, std::string(name) + " must be a nonnegative integer", name);
  }
}

std::string sse_frame(const GraphDelta& d) {
  return "id: " + std::to_string(d.seq) + "\nevent: delta\ndata: " + to_json(d).dump() + "\n\n";
}

}  // namespace

struct HttpService::Impl {
  SessionManager& manager;
  httplib::Server server;
  std::atomic<bool> stopping{false};
  std::chrono::milliseconds poll{250};

  explicit Impl(SessionManager& m) : manager(m) { routes(); }

  template <class F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        send_json(res, error_body(e), http_status(e.code()));
      } catch (const json::exception& e) {
        send_json(res, {{"code", to_string(ErrorCode::ValidationError)}, {"message", e.what()}}, 422);
      } catch (const std::exception& e) {
        send_json(res, {{"code", "InternalError"}, {"message", e.what()}}, 500);
      }
    };
  }

  void routes() {
    server.Get("/api/puzzles", guarded([this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const PuzzleEntry& e : manager.list_puzzles()) {
        list.push_back({{"id", e.id},
                        {"name", e.puzzle->name()},
                        {"num_squares", e.puzzle->board().size()},
                        {"num_colors", e.puzzle->scheme().num_colors()}});
      }
      send_json(res, list);
    }));

    server.Get(R"(/api/puzzles/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      json d = puzzle_descriptor(*manager.puzzle(id));
      d["id"] = id;
      send_json(res, d);
    }));

    server.Post("/api/puzzles", guarded([this](const httplib::Request& req, httplib::Response& res) {
      json body = parse_body(req);
      std::optional<std::string> id;
      if (body.contains("id")) {
        id = body["id"].get<std::string>();
        body.erase("id");
      }
      const Puzzle p = puzzle_from_document(puzzle_document_from_json(body));
      const std::string key = manager.register_puzzle(p, id);
      json d = puzzle_descriptor(*manager.puzzle(key));
      d["id"] = key;
      send_json(res, d, 201);
    }));

    server.Post("/api/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req);
      if (!body.contains("puzzle_id") || !body["puzzle_id"].is_string()) {
        throw Error(ErrorCode::ValidationError, "puzzle_id is required", "puzzle_id");
      }
      SessionOptions opts;
      opts.shuffle_moves = optional_field<std::size_t>(body, "shuffle_moves");
      opts.seed = optional_field<std::uint64_t>(body, "seed");
      const SessionSummary s = manager.create_session(body["puzzle_id"].get<std::string>(), opts);
      json d = s.to_json();
      d["puzzle"] = puzzle_descriptor(*manager.puzzle(s.puzzle_id));
      send_json(res, d, 201);
    }));

    server.Get(R"(/api/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, manager.session(req.matches[1]).to_json());
    }));

    server.Post(R"(/api/sessions/([^/]+)/moves)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const MoveSpec mv = move_from_json(parse_body(req));
      send_json(res, to_json(manager.play_move(id, mv)));
    }));

    server.Post(R"(/api/sessions/([^/]+)/reset)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, to_json(manager.reset_session(req.matches[1])));
    }));

    server.Post(R"(/api/sessions/([^/]+)/shuffle)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const json body = parse_body(req);
      const auto m = optional_field<std::size_t>(body, "m");
      if (!m) throw Error(ErrorCode::ValidationError, "m is required", "m");
      send_json(res, to_json(manager.shuffle_session(id, *m, optional_field<std::uint64_t>(body, "seed"))));
    }));

    server.Get(R"(/api/sessions/([^/]+)/graph)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, manager.explored_graph(req.matches[1]).to_json());
    }));

    server.Get(R"(/api/sessions/([^/]+)/hint)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::size_t budget = size_param(req, "budget", 1'000'000);
      const auto h = manager.hint(req.matches[1], budget);
      if (!h) {
        send_json(res, {{"move", nullptr}, {"solved", true}});
      } else if (!h->optimal) {
        send_json(res,
                  {{"code", to_string(ErrorCode::BudgetExceeded)},
                   {"message", "no optimal move found within the search budget"},
                   {"field", "budget"},
                   {"fallback", to_json(h->move)}},
                  409);
      } else {
        send_json(res, {{"move", to_json(h->move)}, {"optimal", true}, {"solved", false}});
      }
    }));

    server.Get(R"(/api/sessions/([^/]+)/events)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      manager.session(id);  // 404 before the stream starts
      std::size_t since = size_param(req, "since", 0);
      if (req.has_header("Last-Event-ID")) {
        try {
          since = std::stoull(req.get_header_value("Last-Event-ID")) + 1;
        } catch (const std::exception&) {
          throw Error(ErrorCode::ValidationError, "Last-Event-ID must be a delta sequence number", "Last-Event-ID");
        }
      }
      // limit=N closes the stream after N events; useful for scripted clients.
      const std::size_t limit = size_param(req, "limit", 0);
      auto next = std::make_shared<std::size_t>(since);
      auto sent = std::make_shared<std::size_t>(0);
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream", [this, id, next, sent, limit](std::size_t, httplib::DataSink& sink) {
            if (stopping) {
              sink.done();
              return true;
            }
            for (const GraphDelta& d : manager.deltas_since(id, *next, poll)) {
              const std::string frame = sse_frame(d);
              if (!sink.write(frame.data(), frame.size())) return false;
              *next = d.seq + 1;
              if (limit != 0 && ++*sent >= limit) {
                sink.done();
                return true;
              }
            }
            return true;
          });
    }));
  }
};

HttpService::HttpService(SessionManager& manager) : impl_(std::make_unique<Impl>(manager)) {}

HttpService::~HttpService() { stop(); }

int HttpService::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpService::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool HttpService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  impl_->stopping = true;
  impl_->manager.shutdown();
  impl_->server.stop();
}

bool HttpService::is_running() const { return impl_->server.is_running(); }

void HttpService::set_event_poll_interval(std::chrono::milliseconds interval) { impl_->poll = interval; }

}  // namespace quadratis
