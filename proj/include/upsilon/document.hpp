#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "upsilon/planar.hpp"

namespace upsilon {

// JSON network file, format 1:
//   {"format": 1, "ring": "Z" | "Q" | "Z/n",
//    "vertices": [{"id": 0, "boundary": true, "d": "0", "name": "v"}, ...],
//    "edges": [{"id": 0, "tail": 0, "head": 1, "w": "1/2"}, ...],
//    "embedding": {"rotation": [{"vertex": 0, "edges": [0, 3]}, ...], "boundary_order": [0, 2]},
//    "metadata": {...}}
// d, w and names are optional (d = 0, w = 1). Scalars are strings; w may also be
// a JSON integer. In a rotation an edge id stands for its dart leaving the vertex;
// the two darts of a loop are listed in key direction first.
struct NetworkDocument {
  Network network;
  std::optional<EmbeddedPartialGraph> embedding;
  nlohmann::json metadata = nullptr;
};

// Integer or p/q with an optional sign; throws ParseError.
Rat parse_rational(const std::string& s);
std::string rational_to_string(const Rat& q);

// Throws ParseError naming the offending field.
NetworkDocument parse_document(const std::string& text);
nlohmann::json document_to_json(const NetworkDocument& doc);
std::string serialize_document(const NetworkDocument& doc);
NetworkDocument make_document(const Network& n, const std::optional<EmbeddedPartialGraph>& embedding = std::nullopt);

// {"format": 1, "ring": "Z/11", "values": {"0": "3", ...}}; the ring defaults to `ring`.
VertexFunction parse_values(const std::string& text, const Ring& ring);
nlohmann::json values_to_json(const VertexFunction& u);

// Boundary vertices filled, interior open.
std::string to_dot(const Network& n);

}  // namespace upsilon
