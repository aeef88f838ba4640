#include "quiverlab/io.hpp"

#include "quiverlab/drawing.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace quiverlab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw QuiverError(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

Index one_based(const json& j, Index limit, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  const long long v = j.get<long long>();
  if (v < 1 || v > limit)
    throw QuiverError(ErrorKind::IndexOutOfRange,
                      std::string(what) + " " + std::to_string(v) + " outside 1.." + std::to_string(limit));
  return static_cast<Index>(v - 1);
}

std::vector<Index> index_list(const json& j, Index limit, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list");
  std::vector<Index> out;
  for (const auto& x : j) out.push_back(one_based(x, limit, what));
  return out;
}

json shifted(const std::vector<Index>& v) {
  json out = json::array();
  for (Index x : v) out.push_back(x + 1);
  return out;
}

json header(const char* type) { return json{{"schema", kSchema}, {"type", type}}; }

void check_schema(const json& j) {
  if (!j.is_object()) bad("expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchema)
    bad("unsupported schema " + j.at("schema").dump() + ", expected " + kSchema);
}

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  bad("coordinate " + j.dump() + " is not an integer or a fraction string");
}

}  // namespace

json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

Integer integer_from(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Integer(s);
  }
  bad("expected an integer, got " + j.dump());
}

json quiver_json(const ExchangeMatrix& m) {
  json j = header("quiver");
  const Index n = m.size();
  j["n"] = n;
  json rows = json::array();
  for (Index i = 0; i < n; ++i) {
    json row = json::array();
    for (Index k = 0; k < n; ++k) row.push_back(integer_json(m(i, k)));
    rows.push_back(row);
  }
  j["b"] = rows;
  j["frozen"] = shifted(m.frozen());
  if (m.has_labels()) j["labels"] = m.labels();
  return j;
}

ExchangeMatrix quiver_from(const json& j) {
  check_schema(j);
  rethrow_if_error(j);
  const json& rows = field(j, "b");
  if (!rows.is_array()) bad("'b' must be a list of rows");
  const Index n = static_cast<Index>(rows.size());
  if (j.contains("n") && j.at("n") != n) bad("'n' does not match the number of rows");
  IntMatrix b(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) bad("'b' must be square");
    for (Index k = 0; k < n; ++k) b(i, k) = integer_from(row[static_cast<std::size_t>(k)]);
  }
  std::vector<Index> frozen;
  if (j.contains("frozen")) frozen = index_list(j.at("frozen"), n, "frozen vertex");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) bad("'labels' must be a list of strings");
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) bad("'labels' must be a list of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return ExchangeMatrix(std::move(b), std::move(frozen), std::move(labels));
}

json planar_quiver_json(const PlanarQuiver& q) {
  json j = quiver_json(q.quiver);
  json edges = json::array(), rotation = json::array();
  for (auto [t, h] : q.edges) edges.push_back({t + 1, h + 1});
  for (const auto& r : q.rotation) rotation.push_back(shifted(r));
  j["embedding"] = {{"edges", edges}, {"rotation", rotation}, {"outer", shifted(q.outer)}};
  return j;
}

PlanarQuiver planar_quiver_from(const json& j) {
  const ExchangeMatrix m = quiver_from(j);
  const Index n = m.size();
  const json& e = field(j, "embedding");
  if (e.contains("positions")) {
    const json& pos = e.at("positions");
    if (!pos.is_array() || static_cast<Index>(pos.size()) != n) bad("'positions' needs one point per vertex");
    if (!m.is_skew_symmetric())
      throw QuiverError(ErrorKind::NotSkewSymmetric, "a drawing needs a skew-symmetric matrix");
    Drawing d;
    for (const auto& p : pos) {
      if (!p.is_array() || p.size() != 2) bad("each position is [x, y]");
      d.points.push_back(Point{rational_from(p[0]), rational_from(p[1])});
    }
    for (Index a = 0; a < n; ++a)
      for (Index c = 0; c < n; ++c)
        if (m(a, c) > 0) d.arrows.push_back({a, c, static_cast<long long>(m(a, c))});
    d.labels = m.labels();
    return planar_quiver_from_drawing(d);
  }
  PlanarQuiver q;
  const json& edges = field(e, "edges");
  if (!edges.is_array()) bad("'edges' must be a list");
  for (const auto& x : edges) {
    if (!x.is_array() || x.size() != 2) bad("each edge is [tail, head]");
    q.edges.emplace_back(one_based(x[0], n, "edge end"), one_based(x[1], n, "edge end"));
  }
  const json& rot = field(e, "rotation");
  if (!rot.is_array() || static_cast<Index>(rot.size()) != n) bad("'rotation' needs one list per vertex");
  for (const auto& r : rot) q.rotation.push_back(index_list(r, q.half_edge_count(), "half-edge"));
  if (e.contains("outer")) q.outer = index_list(e.at("outer"), q.half_edge_count(), "half-edge");
  q.quiver = quiver_from_edges(n, q.edges, m.labels());
  if (q.quiver.b() != m.b())
    throw QuiverError(ErrorKind::InvalidEmbedding, "the edge list does not reproduce 'b'");
  validate(q);
  return q;
}

json plabic_json(const PlabicGraph& p) {
  json j = header("plabic");
  j["half_edges"] = p.half_edge_count();
  j["pairing"] = shifted(p.pairing);
  json rotation = json::array();
  for (const auto& r : p.rotation) rotation.push_back(shifted(r));
  j["rotation"] = rotation;
  json colors = json::object();
  for (Index v = 0; v < p.vertex_count(); ++v)
    if (p.is_interior(v)) colors[std::to_string(v + 1)] = p.color[v] == Color::Black ? "b" : "w";
  j["colors"] = colors;
  j["boundary"] = shifted(p.boundary);
  if (p.outer) j["outer"] = *p.outer + 1;
  return j;
}

PlabicGraph plabic_from(const json& j) {
  check_schema(j);
  rethrow_if_error(j);
  PlabicGraph p;
  const json& pairing = field(j, "pairing");
  if (!pairing.is_array()) bad("'pairing' must be a list");
  const Index h = static_cast<Index>(pairing.size());
  if (j.contains("half_edges") && j.at("half_edges") != h) bad("'half_edges' does not match 'pairing'");
  p.pairing = index_list(pairing, h, "half-edge");
  const json& rot = field(j, "rotation");
  if (!rot.is_array()) bad("'rotation' must be a list");
  for (const auto& r : rot) p.rotation.push_back(index_list(r, h, "half-edge"));
  const Index n = p.vertex_count();
  p.color.assign(static_cast<std::size_t>(n), Color::None);
  const json& colors = field(j, "colors");
  if (!colors.is_object()) bad("'colors' maps vertex numbers to \"b\" or \"w\"");
  for (const auto& [key, value] : colors.items()) {
    Index v = -1;
    try {
      std::size_t used = 0;
      v = static_cast<Index>(std::stoll(key, &used)) - 1;
      if (used != key.size()) v = -1;
    } catch (const std::exception&) {
    }
    if (v < 0 || v >= n) throw QuiverError(ErrorKind::IndexOutOfRange, "color for unknown vertex '" + key + "'");
    if (value == "b")
      p.color[v] = Color::Black;
    else if (value == "w")
      p.color[v] = Color::White;
    else
      bad("color of vertex " + key + " must be \"b\" or \"w\"");
  }
  if (j.contains("boundary")) p.boundary = index_list(j.at("boundary"), n, "boundary vertex");
  if (j.contains("outer")) p.outer = one_based(j.at("outer"), h, "half-edge");
  validate(p, false);
  return p;
}

json certificate_json(const EmbeddingCertificate& c) {
  json j = header("certificate");
  j["universal"] = quiver_json(c.universal);
  j["seq"] = shifted(c.seq.steps);
  j["base"] = shifted(c.base);
  j["target"] = quiver_json(c.target);
  if (!c.seq.provenance.empty()) j["provenance"] = c.seq.provenance;
  return j;
}

EmbeddingCertificate certificate_from(const json& j) {
  check_schema(j);
  rethrow_if_error(j);
  EmbeddingCertificate c;
  c.universal = quiver_from(field(j, "universal"));
  c.target = quiver_from(field(j, "target"));
  c.seq.steps = index_list(field(j, "seq"), c.universal.size(), "mutation");
  c.base = index_list(field(j, "base"), c.universal.size(), "base vertex");
  if (j.contains("provenance") && j.at("provenance").is_string()) c.seq.provenance = j.at("provenance");
  return c;
}

json check_json(const CertificateCheck& c) {
  json j = header("verification");
  j["ok"] = c.ok;
  j["message"] = c.message;
  json diffs = json::array();
  for (const auto& d : c.diffs)
    diffs.push_back({{"i", d.i + 1}, {"j", d.j + 1}, {"expected", integer_json(d.expected)},
                     {"actual", integer_json(d.actual)}});
  j["diffs"] = diffs;
  return j;
}

json class_report_json(const ClassReport& r, const Budget& b) {
  json j = header("class_report");
  j["size"] = r.size;
  j["exhausted"] = r.exhausted;
  j["max_multiplicity"] = integer_json(r.max_multiplicity);
  j["depth_reached"] = r.depth_reached;
  j["nodes_used"] = r.nodes_used;
  j["edges_used"] = r.edges_used;
  j["budget"] = {{"max_nodes", b.max_nodes}, {"max_depth", b.max_depth}};
  return j;
}

json probe_report_json(const ProbeReport& r) {
  json j = header("probe_report");
  j["strategy"] = strategy_name(r.strategy);
  j["found"] = r.sequence.has_value();
  j["sequence"] = r.sequence ? shifted(r.sequence->steps) : json(nullptr);
  j["target"] = integer_json(r.target);
  j["best_multiplicity"] = integer_json(r.best_multiplicity);
  j["nodes"] = r.nodes;
  j["depth_reached"] = r.depth_reached;
  j["class_exhausted"] = r.class_exhausted;
  // a failed bounded search never settles the question
  j["outcome"] = r.sequence ? "found" : r.class_exhausted ? "unreachable" : "budget_exhausted";
  return j;
}

json sign_coherence_json(const SignCoherenceReport& r) {
  json j = header("sign_coherence_report");
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["max_len"] = r.max_len;
  j["states"] = r.states;
  j["frozen_paths"] = r.frozen_paths;
  j["violation_count"] = r.violation_count;
  json vs = json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"kind", violation_name(v.kind)}, {"sequence", shifted(v.sequence)}, {"i", v.i + 1}, {"j", v.j + 1}});
  j["violations"] = vs;
  return j;
}

json contains_json(const std::optional<std::vector<Index>>& map) {
  json j = header("contains");
  j["found"] = map.has_value();
  j["map"] = map ? shifted(*map) : json(nullptr);
  return j;
}

json error_json(const QuiverError& e) {
  json j = header("error");
  std::vector<long long> where;
  for (long long w : e.where()) where.push_back(w + 1);
  j["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}, {"where", where}};
  return j;
}

void rethrow_if_error(const json& j) {
  if (!j.is_object() || !j.contains("error")) return;
  const json& e = j.at("error");
  const std::string name = e.is_object() ? e.value("kind", "") : "";
  const std::string message = e.is_object() ? e.value("message", "") : e.dump();
  for (int k = 0; k <= static_cast<int>(ErrorKind::ParseError); ++k)
    if (name == kind_name(static_cast<ErrorKind>(k))) {
      std::vector<long long> where;
      if (e.contains("where") && e.at("where").is_array())
        for (const auto& w : e.at("where"))
          if (w.is_number_integer()) where.push_back(w.get<long long>() - 1);
      throw QuiverError(static_cast<ErrorKind>(k), message, where);
    }
  bad("upstream error: " + message);
}

std::string type_of(const json& j) {
  if (!j.is_object()) return "";
  if (j.contains("error")) return "error";
  if (j.contains("type") && j.at("type").is_string()) return j.at("type");
  if (j.contains("pairing")) return "plabic";
  if (j.contains("universal")) return "certificate";
  if (j.contains("b")) return "quiver";
  return "";
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string quiver_dot(const ExchangeMatrix& m) {
  std::ostringstream out;
  out << "digraph quiver {\n";
  for (Index i = 0; i < m.size(); ++i) {
    out << "  v" << i + 1 << " [label=" << quoted(m.has_labels() ? m.label(i) : std::to_string(i + 1));
    if (m.is_frozen(i)) out << ", shape=box";
    out << "];\n";
  }
  for (Index i = 0; i < m.size(); ++i)
    for (Index k = 0; k < m.size(); ++k) {
      if (m(i, k) <= 0) continue;
      const std::string edge = "  v" + std::to_string(i + 1) + " -> v" + std::to_string(k + 1);
      if (m(i, k) != -m(k, i)) {
        out << edge << " [label=\"" << m(i, k) << "," << -m(k, i) << "\"];\n";
      } else if (m(i, k) > 4) {
        out << edge << " [label=\"" << m(i, k) << "\"];\n";
      } else {
        for (int t = 0; t < static_cast<int>(m(i, k)); ++t) out << edge << ";\n";
      }
    }
  out << "}\n";
  return out.str();
}

std::string plabic_dot(const PlabicGraph& p) {
  std::ostringstream out;
  out << "graph plabic {\n";
  for (Index v = 0; v < p.vertex_count(); ++v) {
    out << "  p" << v + 1 << " [label=\"" << v + 1 << "\", ";
    if (p.color[v] == Color::Black)
      out << "shape=circle, style=filled, fillcolor=black, fontcolor=white";
    else if (p.color[v] == Color::White)
      out << "shape=circle, style=filled, fillcolor=white";
    else
      out << "shape=point";
    out << "];\n";
  }
  std::vector<Index> origin(static_cast<std::size_t>(p.half_edge_count()));
  for (Index v = 0; v < p.vertex_count(); ++v)
    for (Index h : p.rotation[v]) origin[h] = v;
  for (Index h = 0; h < p.half_edge_count(); ++h)
    if (h < p.pairing[h])
      out << "  p" << origin[h] + 1 << " -- p" << origin[p.pairing[h]] + 1 << " [label=\"" << h + 1 << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

// Like dump(2), but arrays of scalars stay on one line so matrix rows read
// as rows.
void print(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(k).dump() + ": ";
      print(v, indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !j.empty() && std::none_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else if (j.is_array() && !j.empty()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += (i ? ",\n" : "") + pad;
      print(j[i], indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string render(const json& j) {
  std::string out;
  print(j, 0, out);
  return out + "\n";
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace quiverlab::io
