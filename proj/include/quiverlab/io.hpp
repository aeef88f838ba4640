#pragma once

#include "quiverlab/analysis.hpp"
#include "quiverlab/embedding.hpp"
#include "quiverlab/plabic.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

namespace quiverlab::io {

using nlohmann::json;

inline constexpr const char* kSchema = "quiverlab/1";

// All vertex, half-edge and face indices in JSON are 1-based. Entries that do
// not fit in 64 bits are written as decimal strings; both forms are read.

json integer_json(const Integer& x);
Integer integer_from(const json& j);

json quiver_json(const ExchangeMatrix& m);
ExchangeMatrix quiver_from(const json& j);

// The matrix plus an "embedding" field with edges, rotation and outer markers.
json planar_quiver_json(const PlanarQuiver& q);
// Reads "embedding" either as {edges, rotation, outer} or as {positions},
// a straight-line drawing with one [x, y] per vertex.
PlanarQuiver planar_quiver_from(const json& j);

json plabic_json(const PlabicGraph& p);
PlabicGraph plabic_from(const json& j);

json certificate_json(const EmbeddingCertificate& c);
EmbeddingCertificate certificate_from(const json& j);

json check_json(const CertificateCheck& c);
json class_report_json(const ClassReport& r, const Budget& b);
json probe_report_json(const ProbeReport& r);
json sign_coherence_json(const SignCoherenceReport& r);
json contains_json(const std::optional<std::vector<Index>>& map);

json error_json(const QuiverError& e);
// Rethrows an error object read from a pipeline; no-op otherwise.
void rethrow_if_error(const json& j);

// "quiver" (with or without embedding), "plabic", "certificate", ...
std::string type_of(const json& j);

// Multiplicities above 4 are drawn as one labelled edge.
std::string quiver_dot(const ExchangeMatrix& m);
std::string plabic_dot(const PlabicGraph& p);

// The exact bytes both front ends print for a JSON document.
std::string render(const json& j);
json parse(const std::string& text);

}  // namespace quiverlab::io
