#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "upsilon/error.hpp"

namespace upsilon {

using VertexId = int;
using EdgeKey = int;
// An oriented edge. Edge key k owns darts 2k (first endpoint to second) and 2k+1.
using Dart = int;

inline Dart dart_of(EdgeKey k, bool reversed = false) { return 2 * k + (reversed ? 1 : 0); }
inline EdgeKey edge_of(Dart d) { return d >> 1; }
inline Dart reverse(Dart d) { return d ^ 1; }

// Finite graph with boundary. Multi-edges and loops are allowed; ids are stable.
class PartialGraph {
 public:
  VertexId add_vertex(bool boundary, std::string name = "");
  void add_vertex_with_id(VertexId id, bool boundary, std::string name = "");
  // Returns the new edge key; dart_of(key) runs from a to b.
  EdgeKey add_edge(VertexId a, VertexId b);
  void add_edge_with_key(EdgeKey k, VertexId a, VertexId b);
  void remove_edge(EdgeKey k);
  // Only isolated vertices may be removed.
  void remove_vertex(VertexId v);
  void set_boundary(VertexId v, bool boundary);
  void set_name(VertexId v, std::string name);

  bool has_vertex(VertexId v) const { return v_.count(v) > 0; }
  bool has_edge(EdgeKey k) const { return e_.count(k) > 0; }
  bool has_dart(Dart d) const { return has_edge(edge_of(d)); }
  bool is_boundary(VertexId v) const;
  bool is_interior(VertexId v) const { return !is_boundary(v); }
  const std::string& name(VertexId v) const;
  // Name if set, otherwise the decimal id.
  std::string label(VertexId v) const;

  VertexId tail(Dart d) const;
  VertexId head(Dart d) const;
  std::pair<VertexId, VertexId> endpoints(EdgeKey k) const;
  // Darts with tail v, in increasing order. A loop contributes both of its darts.
  const std::vector<Dart>& out_darts(VertexId v) const;
  std::size_t degree(VertexId v) const { return out_darts(v).size(); }
  std::vector<VertexId> neighbours(VertexId v) const;

  std::vector<VertexId> vertices() const;
  std::vector<VertexId> boundary_vertices() const;
  std::vector<VertexId> interior_vertices() const;
  std::vector<EdgeKey> edge_keys() const;
  std::vector<Dart> darts() const;
  std::size_t num_vertices() const { return v_.size(); }
  std::size_t num_edges() const { return e_.size(); }
  bool empty() const { return v_.empty(); }
  VertexId next_vertex_id() const { return v_.empty() ? 0 : v_.rbegin()->first + 1; }
  EdgeKey next_edge_key() const { return e_.empty() ? 0 : e_.rbegin()->first + 1; }

  // Same ids, flags, endpoints; names are ignored.
  bool operator==(const PartialGraph& o) const;
  bool operator!=(const PartialGraph& o) const { return !(*this == o); }

  // Oriented-edge presentation: each record names its reversal. Rejects
  // records whose reversal is missing, is itself, or does not swap endpoints.
  struct OrientedEdge {
    int id;
    VertexId tail, head;
    int reverse;
  };
  static PartialGraph from_oriented(const std::vector<std::pair<VertexId, bool>>& vertices,
                                    const std::vector<OrientedEdge>& edges);

 private:
  struct VertexData {
    bool boundary = false;
    std::string name;
    std::vector<Dart> out;
  };
  const VertexData& vdata(VertexId v) const;
  std::map<VertexId, VertexData> v_;
  std::map<EdgeKey, std::pair<VertexId, VertexId>> e_;
};

// Consistency of the incidence data; throws GraphError.
void validate_graph(const PartialGraph& g);

// Position of each vertex id in the sorted list `ids`.
std::map<VertexId, std::size_t> index_map(const std::vector<VertexId>& ids);

std::vector<std::vector<VertexId>> connected_components(const PartialGraph& g);
bool is_connected(const PartialGraph& g);

// Vertex-and-edge bijection search. With respect_boundary the flags must match.
bool are_isomorphic(const PartialGraph& a, const PartialGraph& b, bool respect_boundary = true);

// ---------------------------------------------------------------- morphisms

// Image of a source dart: a target dart, or the vertex the edge collapses to.
struct EdgeImage {
  bool collapsed = false;
  int id = 0;
  bool operator==(const EdgeImage& o) const { return collapsed == o.collapsed && id == o.id; }
};

struct Morphism {
  PartialGraph source, target;
  std::map<VertexId, VertexId> vertex_map;
  std::map<Dart, EdgeImage> dart_map;

  // Sends dart_of(k) to `image` and its reversal to reverse(image).
  void map_edge(EdgeKey k, Dart image);
  // Collapses both darts of k to the image of its tail (vertex_map must be set).
  void collapse_edge(EdgeKey k);
};

using DegreeTable = std::map<VertexId, std::size_t>;

// Checks the morphism axioms and returns deg(f, x) for every source vertex.
DegreeTable validate_morphism(const Morphism& f);
bool is_covering_map(const Morphism& f);
bool is_unramified(const Morphism& f);
Morphism identity_morphism(const PartialGraph& g);
// g after f.
Morphism compose(const Morphism& g, const Morphism& f);

// ---------------------------------------------------------------- constructions

struct BoxProduct {
  PartialGraph graph;
  Morphism first, second;  // projections
  // Vertex (x1, x2) gets id i1 * |V2| + i2 with i the sorted positions.
  std::map<std::pair<VertexId, VertexId>, VertexId> vertex_id;
};
BoxProduct box_product(const PartialGraph& g1, const PartialGraph& g2);

// Result of gluing two graphs: ids in the result for each input id.
struct Gluing {
  PartialGraph graph;
  std::map<VertexId, VertexId> first_vertices, second_vertices;
  std::map<EdgeKey, EdgeKey> first_edges, second_edges;
};
Gluing disjoint_union(const PartialGraph& g1, const PartialGraph& g2);
// Identifies boundary vertices x1 and x2.
Gluing wedge_sum(const PartialGraph& g1, VertexId x1, const PartialGraph& g2, VertexId x2);

// Whether `sub` (same ids) is a sub-graph with boundary of `g`.
bool is_sub_graph(const PartialGraph& sub, const PartialGraph& g);
// The sub-graph on the given vertices and edges with the given interior set.
PartialGraph induced_sub_graph(const PartialGraph& g, const std::set<VertexId>& vertices,
                               const std::set<EdgeKey>& edges, const std::set<VertexId>& interior);
PartialGraph pullback_subgraph(const Morphism& f, const PartialGraph& target_sub);

struct DoubleCover {
  PartialGraph graph;
  Morphism projection;
};
// Vertex (v, s) has id 2v + s; edge k gives keys 2k (a0-b1) and 2k+1 (a1-b0).
DoubleCover bipartite_double_cover(const PartialGraph& g);

// Same graph with the given interior vertices made boundary.
PartialGraph make_boundary(const PartialGraph& g, const std::set<VertexId>& s);

}  // namespace upsilon
