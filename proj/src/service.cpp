#include "quiverlab/service.hpp"

#include "quiverlab/drawing.hpp"

#include <cstdlib>
#include <sstream>

namespace quiverlab {

using io::json;

io::json object_json(const Object& o) {
  if (const auto* m = std::get_if<ExchangeMatrix>(&o)) return io::quiver_json(*m);
  return io::plabic_json(std::get<PlabicGraph>(o));
}

Object object_from(const json& j) {
  io::rethrow_if_error(j);
  const std::string type = io::type_of(j);
  if (type == "quiver") return io::quiver_from(j);
  if (type == "plabic") return io::plabic_from(j);
  throw QuiverError(ErrorKind::ParseError, "expected a quiver or a plabic graph, got '" + type + "'");
}

namespace {

Index need_n(const Construction& c) {
  if (!c.n) throw QuiverError(ErrorKind::BadParameters, "'" + c.name + "' needs n");
  return *c.n;
}

Index op_index(const json& op, const char* name) {
  if (!op.contains(name) || !op.at(name).is_number_integer())
    throw QuiverError(ErrorKind::ParseError, std::string("operation needs an integer '") + name + "'");
  return op.at(name).get<Index>() - 1;
}

}  // namespace

json make_construction(const Construction& c) {
  if (c.name == "universal") return io::quiver_json(glue_universal(c.core, need_n(c)));
  if (c.name == "d_universal") {
    if (c.d.empty()) throw QuiverError(ErrorKind::BadParameters, "'d_universal' needs d");
    return io::quiver_json(d_universal_matrix(Symmetrizer{c.d}));
  }
  if (c.name == "planar_universal") return io::planar_quiver_json(planar_universal(need_n(c)).embedding);
  if (c.name == "plabic_universal") {
    const auto u = universal_plabic(need_n(c));
    json j = io::plabic_json(u.plabic.graph);
    json at = json::array();
    for (Index v : u.plabic.vertex_of) at.push_back(v + 1);
    j["vertex_of"] = at;
    return j;
  }
  return io::quiver_json(named_quiver(c.name));
}

Object apply_op(const Object& o, const json& op) {
  if (!op.is_object() || !op.contains("op") || !op.at("op").is_string())
    throw QuiverError(ErrorKind::ParseError, "operation needs an 'op' name");
  const std::string name = op.at("op");
  if (name == "mutate") {
    const auto* m = std::get_if<ExchangeMatrix>(&o);
    if (!m) throw QuiverError(ErrorKind::NotApplicable, "plabic graphs change by square and flip moves");
    return mutate(*m, op_index(op, "vertex"));
  }
  if (name == "square" || name == "flip") {
    const auto* p = std::get_if<PlabicGraph>(&o);
    if (!p) throw QuiverError(ErrorKind::NotApplicable, "moves apply to plabic graphs");
    return name == "square" ? square_move(*p, op_index(op, "face")) : flip_move(*p, op_index(op, "edge"));
  }
  throw QuiverError(ErrorKind::ParseError, "unknown operation '" + name + "'");
}

std::uint64_t effective_seed(std::uint64_t given) {
  if (const char* env = std::getenv("QUIVERLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw QuiverError(ErrorKind::BadParameters, std::string("QUIVERLAB_SEED is not a number: ") + env);
    }
  }
  return given;
}

namespace {

Response reply(int status, const json& j) { return {status, "application/json", io::render(j)}; }

Response not_found(const std::string& what) {
  json j{{"schema", io::kSchema}, {"type", "error"}};
  j["error"] = {{"kind", "NotFound"}, {"message", what}, {"where", json::array()}};
  return reply(404, j);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '/'))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

json body_json(const std::string& body) { return body.empty() ? json::object() : io::parse(body); }

template <typename T>
T param(const json& j, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw QuiverError(ErrorKind::ParseError, std::string("bad value for '") + name + "'");
  }
}

ExchangeMatrix quiver_of_object(const Object& o) {
  if (const auto* m = std::get_if<ExchangeMatrix>(&o)) return *m;
  return quiver_of(std::get<PlabicGraph>(o));
}

json run_probe(const std::string& kind, const Object& o, const json& b) {
  const ExchangeMatrix m = quiver_of_object(o);
  if (kind == "class") {
    Budget budget{param<std::size_t>(b, "budget", 10000), param<std::size_t>(b, "depth", 64)};
    return io::class_report_json(mutation_class_bfs(m, budget), budget);
  }
  if (kind == "probe2") {
    return io::probe_report_json(probe_two_universal(m, param<std::size_t>(b, "depth", 64),
                                                     Integer(param<long long>(b, "mult", 2)),
                                                     param<std::size_t>(b, "budget", 200000),
                                                     parse_strategy(param<std::string>(b, "strategy", "bfs"))));
  }
  if (kind == "sign-coherence") {
    return io::sign_coherence_json(check_sign_coherence(m, param<std::size_t>(b, "trials", 10000),
                                                        param<std::size_t>(b, "len", 20),
                                                        effective_seed(param<std::uint64_t>(b, "seed", 1))));
  }
  if (kind == "contains") {
    if (!b.contains("needle")) throw QuiverError(ErrorKind::ParseError, "contains needs a 'needle' quiver");
    return io::contains_json(find_full_subquiver(m, io::quiver_from(b.at("needle"))));
  }
  throw QuiverError(ErrorKind::ParseError, "unknown probe '" + kind + "'");
}

Object create_object(const json& b) {
  if (b.contains("make")) {
    Construction c;
    c.name = param<std::string>(b, "make", "");
    if (b.contains("n")) c.n = param<Index>(b, "n", 0);
    c.core = parse_core(param<std::string>(b, "core", "somos"));
    if (b.contains("d"))
      for (const auto& x : b.at("d")) c.d.push_back(io::integer_from(x));
    return object_from(make_construction(c));
  }
  if (b.contains("object")) return object_from(b.at("object"));
  throw QuiverError(ErrorKind::ParseError, "a session starts from 'object' or 'make'");
}

}  // namespace

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
  std::lock_guard<std::mutex> g(lock_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

json Service::state_json(const std::string& id, const Session& s) const {
  json j{{"schema", io::kSchema}, {"type", "session"}, {"session", id}};
  j["state"] = object_json(s.current);
  j["kind"] = std::holds_alternative<ExchangeMatrix>(s.current) ? "quiver" : "plabic";
  if (const auto* p = std::get_if<PlabicGraph>(&s.current)) j["quiver"] = io::quiver_json(quiver_of(*p));
  j["history"] = s.ops;
  j["undo_depth"] = s.ops.size();
  j["provenance"] = s.provenance;
  return j;
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body,
                         const std::map<std::string, std::string>& query) {
  const auto parts = split_path(path);
  try {
    if (parts.size() == 1 && parts[0] == "health" && method == "GET")
      return reply(200, {{"schema", io::kSchema}, {"type", "health"}, {"ok", true}});
    if (parts.empty() || parts[0] != "sessions") return not_found("no route " + method + " " + path);

    if (parts.size() == 1 && method == "POST") {
      const json b = body_json(body);
      auto s = std::make_shared<Session>();
      s->start = create_object(b);
      s->current = s->start;
      s->provenance = b.contains("make") ? json{{"make", b.at("make")}} : json{{"source", "json"}};
      if (b.contains("make"))
        for (const char* k : {"n", "core", "d"})
          if (b.contains(k)) s->provenance[k] = b.at(k);
      std::string id;
      {
        std::lock_guard<std::mutex> g(lock_);
        id = std::to_string(next_id_++);
        sessions_[id] = s;
      }
      std::lock_guard<std::mutex> g(s->lock);
      return reply(201, state_json(id, *s));
    }
    if (parts.size() < 2) return not_found("no route " + method + " " + path);

    const std::string& id = parts[1];
    auto s = find(id);
    if (!s) return not_found("unknown session " + id);
    std::lock_guard<std::mutex> g(s->lock);
    const std::string action = parts.size() > 2 ? parts[2] : "";

    if (action.empty() && method == "GET") return reply(200, state_json(id, *s));
    if (action.empty() && method == "DELETE") {
      std::lock_guard<std::mutex> all(lock_);
      sessions_.erase(id);
      return reply(200, {{"schema", io::kSchema}, {"type", "deleted"}, {"session", id}});
    }
    if (method == "POST" && (action == "mutate" || action == "move") && parts.size() == 3) {
      const json b = body_json(body);
      json op;
      if (action == "mutate") {
        op = {{"op", "mutate"}, {"vertex", b.value("vertex", json())}};
      } else {
        const std::string kind = param<std::string>(b, "kind", "");
        if (kind == "square")
          op = {{"op", "square"}, {"face", b.value("face", json())}};
        else if (kind == "flip")
          op = {{"op", "flip"}, {"edge", b.value("edge", json())}};
        else
          throw QuiverError(ErrorKind::ParseError, "move kind must be 'square' or 'flip'");
      }
      s->current = apply_op(s->current, op);
      s->ops.push_back(op);
      return reply(200, state_json(id, *s));
    }
    if (method == "POST" && action == "undo" && parts.size() == 3) {
      if (s->ops.empty()) throw QuiverError(ErrorKind::NotApplicable, "nothing to undo");
      s->ops.pop_back();
      Object o = s->start;
      for (const auto& op : s->ops) o = apply_op(o, op);
      s->current = std::move(o);
      return reply(200, state_json(id, *s));
    }
    if (method == "GET" && action == "export" && parts.size() == 3) {
      auto it = query.find("format");
      const std::string format = it == query.end() ? "json" : it->second;
      if (format == "json") return reply(200, object_json(s->current));
      if (format == "dot") {
        const auto* m = std::get_if<ExchangeMatrix>(&s->current);
        return {200, "text/vnd.graphviz", m ? io::quiver_dot(*m) : io::plabic_dot(std::get<PlabicGraph>(s->current))};
      }
      throw QuiverError(ErrorKind::ParseError, "format must be 'json' or 'dot'");
    }
    if (method == "POST" && action == "probe" && parts.size() == 4) {
      json j = state_json(id, *s);
      j["result"] = run_probe(parts[3], s->current, body_json(body));
      return reply(200, j);
    }
    return not_found("no route " + method + " " + path);
  } catch (const QuiverError& e) {
    return reply(400, io::error_json(e));
  } catch (const json::exception& e) {
    return reply(400, io::error_json(QuiverError(ErrorKind::ParseError, e.what())));
  }
}

}  // namespace quiverlab
