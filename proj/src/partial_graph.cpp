#include "upsilon/partial_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace upsilon {

namespace {
std::string vstr(VertexId v) { return std::to_string(v); }
}  // namespace

// ---------------------------------------------------------------- PartialGraph

VertexId PartialGraph::add_vertex(bool boundary, std::string name) {
  VertexId id = next_vertex_id();
  add_vertex_with_id(id, boundary, std::move(name));
  return id;
}

void PartialGraph::add_vertex_with_id(VertexId id, bool boundary, std::string name) {
  if (id < 0) throw GraphError("negative vertex id " + vstr(id));
  if (v_.count(id)) throw GraphError("duplicate vertex id " + vstr(id));
  v_[id] = VertexData{boundary, std::move(name), {}};
}

EdgeKey PartialGraph::add_edge(VertexId a, VertexId b) {
  EdgeKey k = next_edge_key();
  add_edge_with_key(k, a, b);
  return k;
}

void PartialGraph::add_edge_with_key(EdgeKey k, VertexId a, VertexId b) {
  if (k < 0) throw GraphError("negative edge id " + vstr(k));
  if (e_.count(k)) throw GraphError("duplicate edge id " + vstr(k));
  if (!v_.count(a) || !v_.count(b)) throw GraphError("edge " + vstr(k) + " has a dangling endpoint");
  e_[k] = {a, b};
  auto insert = [](std::vector<Dart>& out, Dart d) { out.insert(std::upper_bound(out.begin(), out.end(), d), d); };
  insert(v_[a].out, dart_of(k));
  insert(v_[b].out, dart_of(k, true));
}

void PartialGraph::remove_edge(EdgeKey k) {
  auto it = e_.find(k);
  if (it == e_.end()) throw GraphError("no edge " + vstr(k));
  for (VertexId v : {it->second.first, it->second.second}) {
    auto& out = v_[v].out;
    out.erase(std::remove_if(out.begin(), out.end(), [k](Dart d) { return edge_of(d) == k; }), out.end());
  }
  e_.erase(it);
}

void PartialGraph::remove_vertex(VertexId v) {
  if (!vdata(v).out.empty()) throw GraphError("vertex " + vstr(v) + " is not isolated");
  v_.erase(v);
}

void PartialGraph::set_boundary(VertexId v, bool boundary) {
  vdata(v);
  v_[v].boundary = boundary;
}

void PartialGraph::set_name(VertexId v, std::string name) {
  vdata(v);
  v_[v].name = std::move(name);
}

const PartialGraph::VertexData& PartialGraph::vdata(VertexId v) const {
  auto it = v_.find(v);
  if (it == v_.end()) throw GraphError("unknown vertex " + vstr(v));
  return it->second;
}

bool PartialGraph::is_boundary(VertexId v) const { return vdata(v).boundary; }
const std::string& PartialGraph::name(VertexId v) const { return vdata(v).name; }
std::string PartialGraph::label(VertexId v) const {
  const auto& n = vdata(v).name;
  return n.empty() ? vstr(v) : n;
}

std::pair<VertexId, VertexId> PartialGraph::endpoints(EdgeKey k) const {
  auto it = e_.find(k);
  if (it == e_.end()) throw GraphError("unknown edge " + vstr(k));
  return it->second;
}

VertexId PartialGraph::tail(Dart d) const {
  auto [a, b] = endpoints(edge_of(d));
  return (d & 1) ? b : a;
}

VertexId PartialGraph::head(Dart d) const { return tail(reverse(d)); }

const std::vector<Dart>& PartialGraph::out_darts(VertexId v) const { return vdata(v).out; }

std::vector<VertexId> PartialGraph::neighbours(VertexId v) const {
  std::vector<VertexId> r;
  for (Dart d : out_darts(v)) r.push_back(head(d));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<VertexId> PartialGraph::vertices() const {
  std::vector<VertexId> r;
  for (const auto& [id, _] : v_) r.push_back(id);
  return r;
}

std::vector<VertexId> PartialGraph::boundary_vertices() const {
  std::vector<VertexId> r;
  for (const auto& [id, d] : v_)
    if (d.boundary) r.push_back(id);
  return r;
}

std::vector<VertexId> PartialGraph::interior_vertices() const {
  std::vector<VertexId> r;
  for (const auto& [id, d] : v_)
    if (!d.boundary) r.push_back(id);
  return r;
}

std::vector<EdgeKey> PartialGraph::edge_keys() const {
  std::vector<EdgeKey> r;
  for (const auto& [k, _] : e_) r.push_back(k);
  return r;
}

std::vector<Dart> PartialGraph::darts() const {
  std::vector<Dart> r;
  for (const auto& [k, _] : e_) {
    r.push_back(dart_of(k));
    r.push_back(dart_of(k, true));
  }
  return r;
}

bool PartialGraph::operator==(const PartialGraph& o) const {
  if (e_ != o.e_ || v_.size() != o.v_.size()) return false;
  for (const auto& [id, d] : v_) {
    auto it = o.v_.find(id);
    if (it == o.v_.end() || it->second.boundary != d.boundary) return false;
  }
  return true;
}

PartialGraph PartialGraph::from_oriented(const std::vector<std::pair<VertexId, bool>>& vertices,
                                         const std::vector<OrientedEdge>& edges) {
  PartialGraph g;
  for (const auto& [id, b] : vertices) g.add_vertex_with_id(id, b);
  std::map<int, const OrientedEdge*> by_id;
  for (const auto& e : edges)
    if (!by_id.emplace(e.id, &e).second) throw GraphError("duplicate oriented edge " + vstr(e.id));
  std::set<int> done;
  EdgeKey next = 0;
  for (const auto& e : edges) {
    if (done.count(e.id)) continue;
    if (e.reverse == e.id) throw GraphError("oriented edge " + vstr(e.id) + " is its own reversal");
    auto it = by_id.find(e.reverse);
    if (it == by_id.end()) throw GraphError("oriented edge " + vstr(e.id) + " has no reversal");
    const OrientedEdge& r = *it->second;
    if (r.reverse != e.id) throw GraphError("reversal of oriented edge " + vstr(e.id) + " is not an involution");
    if (r.tail != e.head || r.head != e.tail)
      throw GraphError("oriented edge " + vstr(e.id) + " and its reversal do not swap endpoints");
    g.add_edge_with_key(next++, e.tail, e.head);
    done.insert(e.id);
    done.insert(r.id);
  }
  return g;
}

void validate_graph(const PartialGraph& g) {
  std::map<VertexId, std::vector<Dart>> expect;
  for (VertexId v : g.vertices()) expect[v];
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    if (!g.has_vertex(a) || !g.has_vertex(b)) throw GraphError("edge " + vstr(k) + " has a dangling endpoint");
    if (g.tail(reverse(dart_of(k))) != b || g.head(reverse(dart_of(k))) != a)
      throw GraphError("edge " + vstr(k) + " has a bad reversal pairing");
    expect[a].push_back(dart_of(k));
    expect[b].push_back(dart_of(k, true));
  }
  for (auto& [v, ds] : expect) {
    std::sort(ds.begin(), ds.end());
    if (ds != g.out_darts(v)) throw GraphError("incidence list of vertex " + vstr(v) + " is inconsistent");
  }
}

std::map<VertexId, std::size_t> index_map(const std::vector<VertexId>& ids) {
  std::map<VertexId, std::size_t> m;
  for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = i;
  return m;
}

std::vector<std::vector<VertexId>> connected_components(const PartialGraph& g) {
  std::set<VertexId> seen;
  std::vector<std::vector<VertexId>> comps;
  for (VertexId s : g.vertices()) {
    if (seen.count(s)) continue;
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    q.push(s);
    seen.insert(s);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      comp.push_back(v);
      for (Dart d : g.out_darts(v)) {
        VertexId h = g.head(d);
        if (seen.insert(h).second) q.push(h);
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const PartialGraph& g) { return connected_components(g).size() <= 1; }

// ---------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
  const PartialGraph& a;
  const PartialGraph& b;
  bool respect;
  std::vector<VertexId> order;
  std::map<VertexId, VertexId> fwd, back;

  std::map<VertexId, int> multiplicity(const PartialGraph& g, VertexId v) const {
    std::map<VertexId, int> m;
    for (Dart d : g.out_darts(v)) ++m[g.head(d)];
    return m;
  }

  bool compatible(VertexId x, VertexId y) const {
    if (a.degree(x) != b.degree(y)) return false;
    if (respect && a.is_boundary(x) != b.is_boundary(y)) return false;
    auto mx = multiplicity(a, x), my = multiplicity(b, y);
    if (mx.count(x) != my.count(y) || (mx.count(x) && mx[x] != my[y])) return false;
    for (const auto& [nx, c] : mx) {
      auto it = fwd.find(nx);
      if (it == fwd.end() || nx == x) continue;
      auto jt = my.find(it->second);
      if (jt == my.end() || jt->second != c) return false;
    }
    for (const auto& [ny, c] : my) {
      auto it = back.find(ny);
      if (it == back.end() || ny == y) continue;
      if (!mx.count(it->second)) return false;
    }
    return true;
  }

  bool run(std::size_t i) {
    if (i == order.size()) return true;
    VertexId x = order[i];
    for (VertexId y : b.vertices()) {
      if (back.count(y) || !compatible(x, y)) continue;
      fwd[x] = y;
      back[y] = x;
      if (run(i + 1)) return true;
      fwd.erase(x);
      back.erase(y);
    }
    return false;
  }
};

}  // namespace

bool are_isomorphic(const PartialGraph& a, const PartialGraph& b, bool respect_boundary) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  auto profile = [&](const PartialGraph& g) {
    std::multiset<std::pair<std::size_t, bool>> p;
    for (VertexId v : g.vertices()) p.insert({g.degree(v), respect_boundary && g.is_boundary(v)});
    return p;
  };
  if (profile(a) != profile(b)) return false;
  IsoSearch s{a, b, respect_boundary, {}, {}, {}};
  // Breadth-first order keeps already-placed neighbours available for pruning.
  std::set<VertexId> seen;
  for (const auto& comp : connected_components(a)) {
    std::queue<VertexId> q;
    q.push(comp.front());
    seen.insert(comp.front());
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      s.order.push_back(v);
      for (VertexId n : a.neighbours(v))
        if (seen.insert(n).second) q.push(n);
    }
  }
  return s.run(0);
}

// ---------------------------------------------------------------- morphisms

void Morphism::map_edge(EdgeKey k, Dart image) {
  dart_map[dart_of(k)] = EdgeImage{false, image};
  dart_map[dart_of(k, true)] = EdgeImage{false, reverse(image)};
}

void Morphism::collapse_edge(EdgeKey k) {
  VertexId t = vertex_map.at(source.endpoints(k).first);
  dart_map[dart_of(k)] = EdgeImage{true, t};
  dart_map[dart_of(k, true)] = EdgeImage{true, t};
}

DegreeTable validate_morphism(const Morphism& f) {
  const PartialGraph& s = f.source;
  const PartialGraph& t = f.target;
  for (VertexId x : s.vertices()) {
    auto it = f.vertex_map.find(x);
    if (it == f.vertex_map.end() || !t.has_vertex(it->second))
      throw GraphError("vertex " + vstr(x) + " has no image in the target");
    if (s.is_interior(x) && t.is_boundary(it->second))
      throw GraphError("interior vertex " + vstr(x) + " maps to boundary vertex " + vstr(it->second));
  }
  for (Dart e : s.darts()) {
    auto it = f.dart_map.find(e);
    if (it == f.dart_map.end()) throw GraphError("edge " + vstr(edge_of(e)) + " has no image");
    const EdgeImage& img = it->second;
    VertexId ft = f.vertex_map.at(s.tail(e)), fh = f.vertex_map.at(s.head(e));
    if (img.collapsed) {
      if (img.id != ft || img.id != fh)
        throw GraphError("collapsed edge " + vstr(edge_of(e)) + " does not collapse onto its endpoints' image");
      auto jt = f.dart_map.find(reverse(e));
      if (jt == f.dart_map.end() || !(jt->second == img))
        throw GraphError("edge " + vstr(edge_of(e)) + " collapses inconsistently with its reversal");
    } else {
      if (!t.has_dart(img.id)) throw GraphError("edge " + vstr(edge_of(e)) + " maps to an unknown target edge");
      if (t.tail(img.id) != ft || t.head(img.id) != fh)
        throw GraphError("edge " + vstr(edge_of(e)) + " is not compatible with its endpoints' images");
      auto jt = f.dart_map.find(reverse(e));
      if (jt == f.dart_map.end() || jt->second.collapsed || jt->second.id != reverse(img.id))
        throw GraphError("edge " + vstr(edge_of(e)) + " does not commute with reversal");
    }
  }
  DegreeTable deg;
  for (VertexId x : s.vertices()) {
    VertexId y = f.vertex_map.at(x);
    std::map<Dart, std::size_t> fibre;
    for (Dart e2 : t.out_darts(y)) fibre[e2] = 0;
    for (Dart e : s.out_darts(x)) {
      const EdgeImage& img = f.dart_map.at(e);
      if (!img.collapsed) ++fibre[img.id];
    }
    std::size_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& [_, c] : fibre) {
      lo = first ? c : std::min(lo, c);
      hi = std::max(hi, c);
      first = false;
    }
    if (s.is_interior(x) && lo != hi)
      throw GraphError("fibre sizes around interior vertex " + vstr(x) + " are not constant");
    deg[x] = hi;
  }
  return deg;
}

bool is_covering_map(const Morphism& f) {
  validate_morphism(f);
  const PartialGraph& s = f.source;
  const PartialGraph& t = f.target;
  std::set<VertexId> hit_v;
  std::set<Dart> hit_e;
  for (VertexId x : s.vertices()) {
    VertexId y = f.vertex_map.at(x);
    if (s.is_boundary(x) != t.is_boundary(y)) return false;
    hit_v.insert(y);
    std::vector<Dart> imgs;
    for (Dart e : s.out_darts(x)) {
      const EdgeImage& img = f.dart_map.at(e);
      if (img.collapsed) return false;
      imgs.push_back(img.id);
      hit_e.insert(img.id);
    }
    std::sort(imgs.begin(), imgs.end());
    if (imgs != t.out_darts(y)) return false;
  }
  return hit_v.size() == t.num_vertices() && hit_e.size() == 2 * t.num_edges();
}

bool is_unramified(const Morphism& f) {
  DegreeTable deg = validate_morphism(f);
  for (const auto& [x, n] : deg)
    if (f.source.is_interior(x) ? n != 1 : n > 1) return false;
  return true;
}

Morphism identity_morphism(const PartialGraph& g) {
  Morphism f{g, g, {}, {}};
  for (VertexId v : g.vertices()) f.vertex_map[v] = v;
  for (Dart d : g.darts()) f.dart_map[d] = EdgeImage{false, d};
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target != g.source) throw GraphError("cannot compose: target of the first map is not the source of the second");
  Morphism h{f.source, g.target, {}, {}};
  for (const auto& [x, y] : f.vertex_map) h.vertex_map[x] = g.vertex_map.at(y);
  for (const auto& [e, img] : f.dart_map) {
    if (img.collapsed) h.dart_map[e] = EdgeImage{true, g.vertex_map.at(img.id)};
    else h.dart_map[e] = g.dart_map.at(img.id);
  }
  return h;
}

// ---------------------------------------------------------------- constructions

BoxProduct box_product(const PartialGraph& g1, const PartialGraph& g2) {
  BoxProduct r;
  auto v1 = g1.vertices(), v2 = g2.vertices();
  for (std::size_t i = 0; i < v1.size(); ++i)
    for (std::size_t j = 0; j < v2.size(); ++j) {
      VertexId id = static_cast<VertexId>(i * v2.size() + j);
      bool interior = g1.is_interior(v1[i]) && g2.is_interior(v2[j]);
      r.graph.add_vertex_with_id(id, !interior, g1.label(v1[i]) + "," + g2.label(v2[j]));
      r.vertex_id[{v1[i], v2[j]}] = id;
    }
  r.first.target = g1;
  r.second.target = g2;
  std::vector<std::pair<EdgeKey, std::pair<bool, std::pair<int, VertexId>>>> origin;
  for (EdgeKey k : g1.edge_keys())
    for (VertexId y : v2) {
      auto [a, b] = g1.endpoints(k);
      EdgeKey nk = r.graph.add_edge(r.vertex_id[{a, y}], r.vertex_id[{b, y}]);
      origin.push_back({nk, {true, {k, y}}});
    }
  for (VertexId x : v1)
    for (EdgeKey k : g2.edge_keys()) {
      auto [a, b] = g2.endpoints(k);
      EdgeKey nk = r.graph.add_edge(r.vertex_id[{x, a}], r.vertex_id[{x, b}]);
      origin.push_back({nk, {false, {k, x}}});
    }
  r.first.source = r.second.source = r.graph;
  for (const auto& [xy, id] : r.vertex_id) {
    r.first.vertex_map[id] = xy.first;
    r.second.vertex_map[id] = xy.second;
  }
  for (const auto& [nk, o] : origin) {
    if (o.first) {
      r.first.map_edge(nk, dart_of(o.second.first));
      r.second.collapse_edge(nk);
    } else {
      r.first.collapse_edge(nk);
      r.second.map_edge(nk, dart_of(o.second.first));
    }
  }
  return r;
}

namespace {

void append_graph(Gluing& r, const PartialGraph& g, std::map<VertexId, VertexId>& vm, std::map<EdgeKey, EdgeKey>& em,
                  VertexId skip, VertexId skip_to) {
  for (VertexId v : g.vertices()) {
    if (v == skip) {
      vm[v] = skip_to;
      continue;
    }
    vm[v] = r.graph.add_vertex(g.is_boundary(v), g.name(v));
  }
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    em[k] = r.graph.add_edge(vm[a], vm[b]);
  }
}

}  // namespace

Gluing disjoint_union(const PartialGraph& g1, const PartialGraph& g2) {
  Gluing r;
  append_graph(r, g1, r.first_vertices, r.first_edges, -1, -1);
  append_graph(r, g2, r.second_vertices, r.second_edges, -1, -1);
  return r;
}

Gluing wedge_sum(const PartialGraph& g1, VertexId x1, const PartialGraph& g2, VertexId x2) {
  if (!g1.has_vertex(x1) || !g1.is_boundary(x1) || !g2.has_vertex(x2) || !g2.is_boundary(x2))
    throw PreconditionError("wedge sum must glue boundary vertices");
  Gluing r;
  append_graph(r, g1, r.first_vertices, r.first_edges, -1, -1);
  append_graph(r, g2, r.second_vertices, r.second_edges, x2, r.first_vertices[x1]);
  return r;
}

bool is_sub_graph(const PartialGraph& sub, const PartialGraph& g) {
  for (VertexId v : sub.vertices())
    if (!g.has_vertex(v)) return false;
  for (EdgeKey k : sub.edge_keys())
    if (!g.has_edge(k) || g.endpoints(k) != sub.endpoints(k)) return false;
  for (VertexId v : sub.interior_vertices())
    if (g.is_boundary(v) || sub.out_darts(v) != g.out_darts(v)) return false;
  return true;
}

PartialGraph induced_sub_graph(const PartialGraph& g, const std::set<VertexId>& vertices,
                               const std::set<EdgeKey>& edges, const std::set<VertexId>& interior) {
  PartialGraph h;
  for (VertexId v : vertices) {
    if (!g.has_vertex(v)) throw GraphError("unknown vertex " + vstr(v));
    h.add_vertex_with_id(v, !interior.count(v), g.name(v));
  }
  for (EdgeKey k : edges) {
    auto [a, b] = g.endpoints(k);
    h.add_edge_with_key(k, a, b);
  }
  return h;
}

PartialGraph pullback_subgraph(const Morphism& f, const PartialGraph& target_sub) {
  if (!is_sub_graph(target_sub, f.target)) throw GraphError("pullback needs a sub-graph of the target");
  const PartialGraph& s = f.source;
  std::set<VertexId> vs, interior;
  std::set<EdgeKey> es;
  for (VertexId x : s.vertices()) {
    VertexId y = f.vertex_map.at(x);
    if (!target_sub.has_vertex(y)) continue;
    vs.insert(x);
    if (s.is_interior(x) && target_sub.is_interior(y)) interior.insert(x);
  }
  for (EdgeKey k : s.edge_keys()) {
    const EdgeImage& img = f.dart_map.at(dart_of(k));
    bool in = img.collapsed ? target_sub.has_vertex(img.id) : target_sub.has_dart(img.id);
    if (in) es.insert(k);
  }
  return induced_sub_graph(s, vs, es, interior);
}

DoubleCover bipartite_double_cover(const PartialGraph& g) {
  DoubleCover r;
  for (VertexId v : g.vertices())
    for (int s = 0; s < 2; ++s) r.graph.add_vertex_with_id(2 * v + s, g.is_boundary(v), g.name(v).empty() ? "" : g.name(v) + (s ? "B" : "A"));
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    r.graph.add_edge_with_key(2 * k, 2 * a, 2 * b + 1);
    r.graph.add_edge_with_key(2 * k + 1, 2 * a + 1, 2 * b);
  }
  r.projection.source = r.graph;
  r.projection.target = g;
  for (VertexId v : r.graph.vertices()) r.projection.vertex_map[v] = v / 2;
  for (EdgeKey k : r.graph.edge_keys()) r.projection.map_edge(k, dart_of(k / 2));
  return r;
}

PartialGraph make_boundary(const PartialGraph& g, const std::set<VertexId>& s) {
  PartialGraph h = g;
  for (VertexId v : s) {
    if (!g.has_vertex(v) || g.is_boundary(v)) throw PreconditionError("vertex " + vstr(v) + " is not an interior vertex");
    h.set_boundary(v, true);
  }
  return h;
}

}  // namespace upsilon
