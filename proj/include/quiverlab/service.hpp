#pragma once

#include "quiverlab/io.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

namespace quiverlab {

// What a session or a CLI pipeline stage holds.
using Object = std::variant<ExchangeMatrix, PlabicGraph>;

io::json object_json(const Object& o);
Object object_from(const io::json& j);

struct Construction {
  std::string name;
  std::optional<Index> n;
  CoreKind core = CoreKind::Somos;
  std::vector<Integer> d;
};
// Named quivers, universal quivers (universal, d_universal, planar_universal)
// and plabic_universal. Planar outputs carry their embedding.
io::json make_construction(const Construction& c);

// {"op": "mutate", "vertex": k}, {"op": "square", "face": f} or
// {"op": "flip", "edge": h}, all 1-based.
Object apply_op(const Object& o, const io::json& op);

// QUIVERLAB_SEED, when set, replaces the given seed.
std::uint64_t effective_seed(std::uint64_t given);

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Request handling for the local service, independent of the transport.
// Sessions keep their starting object and the list of applied operations;
// undo replays the shortened list from the start.
class Service {
 public:
  Response handle(const std::string& method, const std::string& path, const std::string& body,
                  const std::map<std::string, std::string>& query = {});

 private:
  struct Session {
    std::mutex lock;
    io::json provenance;
    Object start;
    Object current;
    std::vector<io::json> ops;
  };

  std::shared_ptr<Session> find(const std::string& id);
  io::json state_json(const std::string& id, const Session& s) const;

  std::mutex lock_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

// HTTP transport for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace quiverlab
