#include "upsilon/document.hpp"

#include <regex>
#include <sstream>

namespace upsilon {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(path, "unknown field \"" + k + "\"");
  }
}

const json& field(const json& j, const std::string& path, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) fail(path, std::string("missing field \"") + name + "\"");
  return *it;
}

int int_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < 0 || v > 1000000000) fail(path, "id out of range");
  return static_cast<int>(v);
}

Rat scalar(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  if (!j.is_string()) fail(path, "expected an integer or a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

}  // namespace

Rat parse_rational(const std::string& s) {
  static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(s, re)) throw ParseError("malformed rational \"" + s + "\"");
  auto slash = s.find('/');
  Int num(s.substr(0, slash)), den(1);
  if (slash != std::string::npos) den = Int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rat& q) { return q.get_str(); }

NetworkDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  only_fields(j, "document", {"format", "ring", "vertices", "edges", "embedding", "metadata"});
  const json& fmt = field(j, "document", "format");
  if (!fmt.is_number_integer() || fmt.get<long long>() != 1) fail("/format", "only format 1 is supported");
  NetworkDocument doc;
  Network& n = doc.network;
  {
    const json& r = field(j, "document", "ring");
    if (!r.is_string()) fail("/ring", "expected a string");
    n.ring = Ring::parse(r.get<std::string>());
  }
  auto in_ring = [&](const Rat& q, const std::string& path) {
    if (n.ring.kind != RingKind::Rational && q.get_den() != 1)
      fail(path, "value " + q.get_str() + " is not in " + n.ring.to_string());
    return n.ring.normalize(q);
  };

  const json& vs = field(j, "document", "vertices");
  if (!vs.is_array()) fail("/vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string p = "/vertices/" + std::to_string(i);
    only_fields(vs[i], p, {"id", "boundary", "d", "name"});
    int id = int_field(field(vs[i], p, "id"), p + "/id");
    if (n.graph.has_vertex(id)) fail(p + "/id", "duplicate vertex id " + std::to_string(id));
    bool bd = false;
    if (auto it = vs[i].find("boundary"); it != vs[i].end()) {
      if (!it->is_boolean()) fail(p + "/boundary", "expected true or false");
      bd = it->get<bool>();
    }
    std::string name;
    if (auto it = vs[i].find("name"); it != vs[i].end()) {
      if (!it->is_string()) fail(p + "/name", "expected a string");
      name = it->get<std::string>();
    }
    n.graph.add_vertex_with_id(id, bd, name);
    Rat d = 0;
    if (auto it = vs[i].find("d"); it != vs[i].end()) d = scalar(*it, p + "/d");
    n.d[id] = in_ring(d, p + "/d");
  }

  const json& es = field(j, "document", "edges");
  if (!es.is_array()) fail("/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string p = "/edges/" + std::to_string(i);
    only_fields(es[i], p, {"id", "tail", "head", "w"});
    int id = int_field(field(es[i], p, "id"), p + "/id");
    if (n.graph.has_edge(id)) fail(p + "/id", "duplicate edge id " + std::to_string(id));
    int t = int_field(field(es[i], p, "tail"), p + "/tail");
    int h = int_field(field(es[i], p, "head"), p + "/head");
    if (!n.graph.has_vertex(t)) fail(p + "/tail", "unknown vertex " + std::to_string(t));
    if (!n.graph.has_vertex(h)) fail(p + "/head", "unknown vertex " + std::to_string(h));
    n.graph.add_edge_with_key(id, t, h);
    Rat w = 1;
    if (auto it = es[i].find("w"); it != es[i].end()) w = scalar(*it, p + "/w");
    n.w[id] = in_ring(w, p + "/w");
  }

  if (auto it = j.find("embedding"); it != j.end()) {
    const json& e = *it;
    only_fields(e, "/embedding", {"rotation", "boundary_order"});
    EmbeddedPartialGraph eg;
    eg.graph = n.graph;
    const json& rot = field(e, "/embedding", "rotation");
    if (!rot.is_array()) fail("/embedding/rotation", "expected an array");
    for (std::size_t i = 0; i < rot.size(); ++i) {
      std::string p = "/embedding/rotation/" + std::to_string(i);
      only_fields(rot[i], p, {"vertex", "edges"});
      int v = int_field(field(rot[i], p, "vertex"), p + "/vertex");
      if (!n.graph.has_vertex(v)) fail(p + "/vertex", "unknown vertex " + std::to_string(v));
      if (eg.rotation.count(v)) fail(p + "/vertex", "duplicate rotation for vertex " + std::to_string(v));
      const json& ks = field(rot[i], p, "edges");
      if (!ks.is_array()) fail(p + "/edges", "expected an array");
      std::vector<Dart> darts;
      std::set<EdgeKey> loops_seen;
      for (std::size_t q = 0; q < ks.size(); ++q) {
        std::string pq = p + "/edges/" + std::to_string(q);
        int k = int_field(ks[q], pq);
        if (!n.graph.has_edge(k)) fail(pq, "unknown edge " + std::to_string(k));
        auto [a, b] = n.graph.endpoints(k);
        if (a == v && b == v) darts.push_back(dart_of(k, !loops_seen.insert(k).second));
        else if (a == v) darts.push_back(dart_of(k, false));
        else if (b == v) darts.push_back(dart_of(k, true));
        else fail(pq, "edge " + std::to_string(k) + " does not meet vertex " + std::to_string(v));
      }
      eg.rotation[v] = std::move(darts);
    }
    const json& bo = field(e, "/embedding", "boundary_order");
    if (!bo.is_array()) fail("/embedding/boundary_order", "expected an array");
    for (std::size_t i = 0; i < bo.size(); ++i)
      eg.boundary_order.push_back(int_field(bo[i], "/embedding/boundary_order/" + std::to_string(i)));
    doc.embedding = std::move(eg);
  }
  if (auto it = j.find("metadata"); it != j.end()) doc.metadata = *it;
  validate_network(n);
  return doc;
}

NetworkDocument make_document(const Network& n, const std::optional<EmbeddedPartialGraph>& embedding) {
  NetworkDocument doc;
  doc.network = n;
  doc.embedding = embedding;
  return doc;
}

json document_to_json(const NetworkDocument& doc) {
  const Network& n = doc.network;
  json j = json::object();
  j["format"] = 1;
  j["ring"] = n.ring.to_string();
  j["vertices"] = json::array();
  for (VertexId v : n.graph.vertices()) {
    json x = {{"id", v}, {"boundary", n.graph.is_boundary(v)}, {"d", rational_to_string(n.offset(v))}};
    if (!n.graph.name(v).empty()) x["name"] = n.graph.name(v);
    j["vertices"].push_back(x);
  }
  j["edges"] = json::array();
  for (EdgeKey k : n.graph.edge_keys()) {
    auto [a, b] = n.graph.endpoints(k);
    j["edges"].push_back({{"id", k}, {"tail", a}, {"head", b}, {"w", rational_to_string(n.weight(k))}});
  }
  if (doc.embedding) {
    json rot = json::array();
    for (const auto& [v, darts] : doc.embedding->rotation) {
      json ks = json::array();
      for (Dart d : darts) ks.push_back(edge_of(d));
      rot.push_back({{"vertex", v}, {"edges", ks}});
    }
    j["embedding"] = {{"rotation", rot}, {"boundary_order", doc.embedding->boundary_order}};
  }
  if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
  return j;
}

std::string serialize_document(const NetworkDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

VertexFunction parse_values(const std::string& text, const Ring& ring) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  only_fields(j, "values document", {"format", "ring", "values"});
  if (auto it = j.find("format"); it != j.end() && (!it->is_number_integer() || it->get<long long>() != 1))
    fail("/format", "only format 1 is supported");
  VertexFunction u{ring, {}};
  if (auto it = j.find("ring"); it != j.end()) {
    if (!it->is_string()) fail("/ring", "expected a string");
    u.ring = Ring::parse(it->get<std::string>());
  }
  const json& vals = field(j, "values document", "values");
  if (!vals.is_object()) fail("/values", "expected an object keyed by vertex id");
  for (const auto& [k, v] : vals.items()) {
    static const std::regex id_re("[0-9]+");
    if (!std::regex_match(k, id_re)) fail("/values", "key \"" + k + "\" is not a vertex id");
    Rat q = scalar(v, "/values/" + k);
    try {
      u.values[std::stoi(k)] = u.ring.normalize(q);
    } catch (const PreconditionError& e) {
      fail("/values/" + k, e.what());
    }
  }
  return u;
}

json values_to_json(const VertexFunction& u) {
  json vals = json::object();
  for (const auto& [v, x] : u.values) vals[std::to_string(v)] = rational_to_string(x);
  return {{"format", 1}, {"ring", u.ring.to_string()}, {"values", vals}};
}

std::string to_dot(const Network& n) {
  auto quote = [](const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r + "\"";
  };
  std::ostringstream os;
  os << "graph network {\n  node [shape=circle, width=0.3, fixedsize=true];\n";
  for (VertexId v : n.graph.vertices()) {
    os << "  " << v << " [label=" << quote(n.graph.label(v));
    if (n.graph.is_boundary(v)) os << ", style=filled, fillcolor=black, fontcolor=white";
    os << "];\n";
  }
  for (EdgeKey k : n.graph.edge_keys()) {
    auto [a, b] = n.graph.endpoints(k);
    os << "  " << a << " -- " << b;
    if (n.weight(k) != 1) os << " [label=" << quote(rational_to_string(n.weight(k))) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace upsilon
