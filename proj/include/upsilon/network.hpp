#pragma once

#include <map>
#include <string>
#include <vector>

#include "upsilon/exact_algebra.hpp"
#include "upsilon/partial_graph.hpp"

namespace upsilon {

enum class RingKind { Integer, Rational, Modular };

// Scalar ring of a network or coefficient module of a vertex function.
struct Ring {
  RingKind kind = RingKind::Integer;
  Int modulus = 0;

  static Ring Z() { return {RingKind::Integer, 0}; }
  static Ring Q() { return {RingKind::Rational, 0}; }
  static Ring mod(const Int& n);
  // "Z", "Q" or "Z/n".
  std::string to_string() const;
  static Ring parse(const std::string& s);
  bool operator==(const Ring& o) const { return kind == o.kind && modulus == o.modulus; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  // Whether q is an element of the ring (integers mod n store representatives in [0, n)).
  bool contains(const Rat& q) const;
  // Canonical form of q in the ring; throws if q cannot be mapped.
  Rat normalize(const Rat& q) const;
  bool is_unit(const Rat& q) const;
};

// Generalized Laplacian Lx = d(x) x + sum over e in E(x) of w(e) (x - e_-).
// Weights are indexed by edge key, so w(e) = w(reverse e) holds by construction.
// Scalars are stored as rationals normalized for the ring.
struct Network {
  PartialGraph graph;
  Ring ring = Ring::Z();
  std::map<EdgeKey, Rat> w;
  std::map<VertexId, Rat> d;

  const Rat& weight(EdgeKey k) const;
  const Rat& offset(VertexId v) const;
  // Every weight is a unit of the ring.
  bool is_unit_weight() const;
  bool is_normalized() const;  // d == 0
};

// Unit weights and zero offsets over Z.
Network std_network(const PartialGraph& g);
// Same weights for every edge and offset for every vertex.
Network constant_network(const PartialGraph& g, const Ring& ring, const Rat& w, const Rat& d);
// Checks that weights and offsets are present for exactly the graph's edges and vertices and lie in the ring.
void validate_network(const Network& n);

// Values on every vertex, in a coefficient module Z, Q or Z/n.
struct VertexFunction {
  Ring ring = Ring::Q();
  std::map<VertexId, Rat> values;
  const Rat& operator()(VertexId v) const;
  bool operator==(const VertexFunction& o) const { return ring == o.ring && values == o.values; }
};

VertexFunction zero_function(const PartialGraph& g, const Ring& ring);

// Sub-matrix of L with the given rows and columns, each in the given order.
RatMatrix laplacian_matrix(const Network& n, const std::vector<VertexId>& rows, const std::vector<VertexId>& cols);
RatMatrix laplacian_matrix(const Network& n);
// Integral variant; throws if some entry is not an integer.
IntMatrix laplacian_int(const Network& n, const std::vector<VertexId>& rows, const std::vector<VertexId>& cols);
// V-rows by interior-columns block, both in id order.
IntMatrix interior_block(const Network& n);

VertexFunction apply_L(const Network& n, const VertexFunction& u);
bool is_harmonic(const Network& n, const VertexFunction& u);
// u and Lu vanish on the boundary and u is harmonic.
bool is_in_U0(const Network& n, const VertexFunction& u);

bool is_nondegenerate(const Network& n);
ModuleDecomposition U0_mod_n(const Network& n, const Int& modulus);
// One function per cyclic summand of U0 with coefficients in Z/modulus.
std::vector<std::pair<Int, VertexFunction>> U0_mod_n_generators(const Network& n, const Int& modulus);
ModuleDecomposition U0_QmodZ(const Network& n);
// Number of elements of U0 over Z/modulus, counted by brute force over interior assignments.
Int U0_mod_n_brute_force(const Network& n, long modulus);

// Checks the morphism axioms plus w1(e) = w2(f(e)) and d1(x) = deg(f,x) d2(f(x)) at interior x.
DegreeTable validate_network_morphism(const Morphism& f, const Network& n1, const Network& n2);
// u o f for u harmonic on the target.
VertexFunction pullback_harmonic(const Morphism& f, const Network& n1, const Network& n2, const VertexFunction& u);
// y -> sum over the fibre of deg(f,x) u(x), for u in U0 of the source.
VertexFunction pushforward_U0(const Morphism& f, const Network& n1, const Network& n2, const VertexFunction& u);

}  // namespace upsilon
