#include "upsilon/network.hpp"

#include <functional>

namespace upsilon {

namespace {
std::string vstr(long v) { return std::to_string(v); }
}  // namespace

// ---------------------------------------------------------------- Ring

Ring Ring::mod(const Int& n) {
  if (n < 2) throw PreconditionError("modulus must be at least 2");
  return {RingKind::Modular, n};
}

std::string Ring::to_string() const {
  switch (kind) {
    case RingKind::Integer: return "Z";
    case RingKind::Rational: return "Q";
    case RingKind::Modular: return "Z/" + modulus.get_str();
  }
  return "";
}

Ring Ring::parse(const std::string& s) {
  if (s == "Z") return Z();
  if (s == "Q") return Q();
  if (s.rfind("Z/", 0) == 0) {
    Int n;
    if (s.size() > 2 && n.set_str(s.substr(2), 10) == 0 && n >= 2) return mod(n);
  }
  throw ParseError("unknown ring '" + s + "'");
}

bool Ring::contains(const Rat& q) const {
  switch (kind) {
    case RingKind::Integer: return q.get_den() == 1;
    case RingKind::Rational: return true;
    case RingKind::Modular: return q.get_den() == 1 && q >= 0 && q < modulus;
  }
  return false;
}

Rat Ring::normalize(const Rat& q) const {
  switch (kind) {
    case RingKind::Integer:
      if (q.get_den() != 1) throw PreconditionError(q.get_str() + " is not an integer");
      return q;
    case RingKind::Rational: return q;
    case RingKind::Modular: return Rat(reduce_mod(q, modulus));
  }
  return q;
}

bool Ring::is_unit(const Rat& q) const {
  switch (kind) {
    case RingKind::Integer: return q == 1 || q == -1;
    case RingKind::Rational: return q != 0;
    case RingKind::Modular: return Residue(normalize(q).get_num(), modulus).is_unit();
  }
  return false;
}

// ---------------------------------------------------------------- Network

const Rat& Network::weight(EdgeKey k) const {
  auto it = w.find(k);
  if (it == w.end()) throw GraphError("no weight for edge " + vstr(k));
  return it->second;
}

const Rat& Network::offset(VertexId v) const {
  auto it = d.find(v);
  if (it == d.end()) throw GraphError("no offset for vertex " + vstr(v));
  return it->second;
}

bool Network::is_unit_weight() const {
  for (const auto& [_, x] : w)
    if (!ring.is_unit(x)) return false;
  return true;
}

bool Network::is_normalized() const {
  for (const auto& [_, x] : d)
    if (x != 0) return false;
  return true;
}

Network std_network(const PartialGraph& g) { return constant_network(g, Ring::Z(), 1, 0); }

Network constant_network(const PartialGraph& g, const Ring& ring, const Rat& w, const Rat& d) {
  Network n{g, ring, {}, {}};
  for (EdgeKey k : g.edge_keys()) n.w[k] = ring.normalize(w);
  for (VertexId v : g.vertices()) n.d[v] = ring.normalize(d);
  return n;
}

void validate_network(const Network& n) {
  validate_graph(n.graph);
  if (n.w.size() != n.graph.num_edges() || n.d.size() != n.graph.num_vertices())
    throw GraphError("network data does not match the graph");
  for (const auto& [k, x] : n.w) {
    if (!n.graph.has_edge(k)) throw GraphError("weight given for unknown edge " + vstr(k));
    if (!n.ring.contains(x)) throw GraphError("weight of edge " + vstr(k) + " is not in " + n.ring.to_string());
  }
  for (const auto& [v, x] : n.d) {
    if (!n.graph.has_vertex(v)) throw GraphError("offset given for unknown vertex " + vstr(v));
    if (!n.ring.contains(x)) throw GraphError("offset of vertex " + vstr(v) + " is not in " + n.ring.to_string());
  }
}

// ---------------------------------------------------------------- functions

const Rat& VertexFunction::operator()(VertexId v) const {
  auto it = values.find(v);
  if (it == values.end()) throw PreconditionError("function has no value at vertex " + vstr(v));
  return it->second;
}

VertexFunction zero_function(const PartialGraph& g, const Ring& ring) {
  VertexFunction u{ring, {}};
  for (VertexId v : g.vertices()) u.values[v] = 0;
  return u;
}

RatMatrix laplacian_matrix(const Network& n, const std::vector<VertexId>& rows, const std::vector<VertexId>& cols) {
  auto ri = index_map(rows);
  for (VertexId v : rows)
    if (!n.graph.has_vertex(v)) throw GraphError("unknown vertex " + vstr(v));
  RatMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    VertexId y = cols[j];
    if (!n.graph.has_vertex(y)) throw GraphError("unknown vertex " + vstr(y));
    Rat diag = n.offset(y);
    for (Dart e : n.graph.out_darts(y)) {
      VertexId h = n.graph.head(e);
      if (h == y) continue;
      const Rat& w = n.weight(edge_of(e));
      diag += w;
      auto it = ri.find(h);
      if (it != ri.end()) m(it->second, j) -= w;
    }
    auto it = ri.find(y);
    if (it != ri.end()) m(it->second, j) += diag;
  }
  return m;
}

RatMatrix laplacian_matrix(const Network& n) {
  auto v = n.graph.vertices();
  return laplacian_matrix(n, v, v);
}

IntMatrix laplacian_int(const Network& n, const std::vector<VertexId>& rows, const std::vector<VertexId>& cols) {
  RatMatrix m = laplacian_matrix(n, rows, cols);
  if (!is_integral(m)) throw PreconditionError("network weights are not integral");
  return to_integer(m);
}

IntMatrix interior_block(const Network& n) {
  return laplacian_int(n, n.graph.vertices(), n.graph.interior_vertices());
}

namespace {

// Scalars of the network, mapped into the coefficient module of u.
Rat coerce(const Rat& x, const Ring& target, const Ring& source) {
  if (target.kind == RingKind::Modular) {
    if (source.kind == RingKind::Modular && source.modulus % target.modulus != 0)
      throw PreconditionError("ring mismatch: " + source.to_string() + " does not act on " + target.to_string());
    return Rat(reduce_mod(x, target.modulus));
  }
  if (source.kind == RingKind::Modular)
    throw PreconditionError("ring mismatch: " + source.to_string() + " does not act on " + target.to_string());
  if (target.kind == RingKind::Integer && x.get_den() != 1)
    throw PreconditionError("ring mismatch: rational weight acting on integer values");
  return x;
}

void check_function(const Network& n, const VertexFunction& u) {
  for (VertexId v : n.graph.vertices())
    if (!u.values.count(v)) throw PreconditionError("function has no value at vertex " + vstr(v));
}

}  // namespace

VertexFunction apply_L(const Network& n, const VertexFunction& u) {
  check_function(n, u);
  VertexFunction r{u.ring, {}};
  for (VertexId x : n.graph.vertices()) {
    Rat s = coerce(n.offset(x), u.ring, n.ring) * u(x);
    for (Dart e : n.graph.out_darts(x)) {
      VertexId h = n.graph.head(e);
      if (h == x) continue;
      s += coerce(n.weight(edge_of(e)), u.ring, n.ring) * (u(x) - u(h));
    }
    r.values[x] = u.ring.normalize(s);
  }
  return r;
}

bool is_harmonic(const Network& n, const VertexFunction& u) {
  VertexFunction lu = apply_L(n, u);
  for (VertexId x : n.graph.interior_vertices())
    if (lu(x) != 0) return false;
  return true;
}

bool is_in_U0(const Network& n, const VertexFunction& u) {
  VertexFunction lu = apply_L(n, u);
  for (VertexId x : n.graph.vertices()) {
    if (lu(x) != 0) return false;
    if (n.graph.is_boundary(x) && u(x) != 0) return false;
  }
  return true;
}

bool is_nondegenerate(const Network& n) {
  if (n.ring.kind == RingKind::Modular) throw PreconditionError("non-degeneracy test needs integer or rational scalars");
  auto interior = n.graph.interior_vertices();
  return rank_over_Q(laplacian_matrix(n, n.graph.vertices(), interior)) == interior.size();
}

namespace {

IntMatrix integral_block(const Network& n, const Int* modulus) {
  if (n.ring.kind == RingKind::Modular) {
    if (!modulus || n.ring.modulus % *modulus != 0)
      throw PreconditionError("coefficients must be a quotient of " + n.ring.to_string());
  }
  return interior_block(n);
}

}  // namespace

ModuleDecomposition U0_mod_n(const Network& n, const Int& modulus) {
  return kernel_mod_n(integral_block(n, &modulus), modulus);
}

std::vector<std::pair<Int, VertexFunction>> U0_mod_n_generators(const Network& n, const Int& modulus) {
  auto interior = n.graph.interior_vertices();
  std::vector<std::pair<Int, VertexFunction>> out;
  for (const auto& c : kernel_mod_n_generators(integral_block(n, &modulus), modulus)) {
    VertexFunction u = zero_function(n.graph, Ring::mod(modulus));
    for (std::size_t i = 0; i < interior.size(); ++i) u.values[interior[i]] = Rat(c.generator[i]);
    out.push_back({c.order, std::move(u)});
  }
  return out;
}

ModuleDecomposition U0_QmodZ(const Network& n) {
  if (n.ring.kind == RingKind::Modular) throw PreconditionError("Q/Z coefficients need integer weights");
  try {
    return kernel_QmodZ_torsion(interior_block(n));
  } catch (const DivisibleKernelError&) {
    throw PreconditionError("degenerate network: U0 with Q/Z coefficients has a divisible part");
  }
}

Int U0_mod_n_brute_force(const Network& n, long modulus) {
  IntMatrix a = integral_block(n, nullptr);
  const std::size_t k = a.cols();
  std::vector<long> x(k, 0);
  Int count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < a.rows() && ok; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < k; ++j) s += a(i, j) * x[j];
      if (s % modulus != 0) ok = false;
    }
    if (ok) ++count;
    std::size_t p = 0;
    while (p < k && ++x[p] == modulus) x[p++] = 0;
    if (p == k) break;
  }
  return count;
}

// ---------------------------------------------------------------- morphisms

DegreeTable validate_network_morphism(const Morphism& f, const Network& n1, const Network& n2) {
  if (n1.graph != f.source || n2.graph != f.target) throw GraphError("morphism does not match the networks' graphs");
  DegreeTable deg = validate_morphism(f);
  for (EdgeKey k : f.source.edge_keys()) {
    const EdgeImage& img = f.dart_map.at(dart_of(k));
    if (img.collapsed) continue;
    if (n1.weight(k) != n2.weight(edge_of(img.id)))
      throw PreconditionError("weight of edge " + vstr(k) + " differs from the weight of its image");
  }
  for (VertexId x : f.source.interior_vertices()) {
    Rat expect = n2.ring.normalize(Rat(static_cast<long>(deg.at(x))) * n2.offset(f.vertex_map.at(x)));
    if (n1.offset(x) != expect) throw PreconditionError("offset at vertex " + vstr(x) + " is not deg times the image offset");
  }
  return deg;
}

VertexFunction pullback_harmonic(const Morphism& f, const Network& n1, const Network& n2, const VertexFunction& u) {
  validate_network_morphism(f, n1, n2);
  if (!is_harmonic(n2, u)) throw PreconditionError("input function is not harmonic");
  VertexFunction r{u.ring, {}};
  for (const auto& [x, y] : f.vertex_map) r.values[x] = u(y);
  if (!is_harmonic(n1, r)) throw PreconditionError("internal: pullback is not harmonic");
  return r;
}

VertexFunction pushforward_U0(const Morphism& f, const Network& n1, const Network& n2, const VertexFunction& u) {
  DegreeTable deg = validate_network_morphism(f, n1, n2);
  if (!is_in_U0(n1, u)) throw PreconditionError("input function is not in U0");
  VertexFunction r = zero_function(n2.graph, u.ring);
  for (const auto& [x, y] : f.vertex_map) r.values[y] += Rat(static_cast<long>(deg.at(x))) * u(x);
  for (auto& [_, v] : r.values) v = u.ring.normalize(v);
  if (!is_in_U0(n2, r)) throw PreconditionError("internal: pushforward is not in U0");
  return r;
}

}  // namespace upsilon
