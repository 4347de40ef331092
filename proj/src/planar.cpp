#include "upsilon/planar.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace upsilon {

namespace {

// Augmented map of an embedding: real darts are >= 0, arc darts are -1 - arc_id.
struct AugMap {
  const EmbeddedPartialGraph* eg;
  std::size_t k;
  std::map<VertexId, std::size_t> position;
  std::map<VertexId, std::vector<int>> rot;

  static int arc(std::size_t i, bool cw) { return -1 - static_cast<int>(2 * i + (cw ? 1 : 0)); }
  static bool is_arc(int a) { return a < 0; }
  static int arc_id(int a) { return -1 - a; }

  explicit AugMap(const EmbeddedPartialGraph& g) : eg(&g), k(g.boundary_order.size()) {
    for (std::size_t i = 0; i < k; ++i) position[g.boundary_order[i]] = i;
    for (const auto& [v, darts] : g.rotation) {
      std::vector<int> r;
      auto it = position.find(v);
      if (it != position.end()) r.push_back(arc(it->second, false));
      r.insert(r.end(), darts.begin(), darts.end());
      if (it != position.end()) r.push_back(arc((it->second + k - 1) % k, true));
      rot[v] = std::move(r);
    }
  }
  VertexId tail(int a) const {
    if (!is_arc(a)) return eg->graph.tail(a);
    std::size_t id = static_cast<std::size_t>(arc_id(a)), i = id / 2;
    return eg->boundary_order[id % 2 == 0 ? i : (i + 1) % k];
  }
  VertexId head(int a) const { return tail(rev(a)); }
  static int rev(int a) { return is_arc(a) ? -1 - (arc_id(a) ^ 1) : reverse(a); }
  int next(int a) const {
    const auto& r = rot.at(head(a));
    auto it = std::find(r.begin(), r.end(), rev(a));
    ++it;
    return it == r.end() ? r.front() : *it;
  }
};

FaceDart to_face_dart(int a) {
  return AugMap::is_arc(a) ? FaceDart{true, AugMap::arc_id(a)} : FaceDart{false, a};
}

}  // namespace

EmbeddedPartialGraph designate_boundary(const EmbeddedPartialGraph& eg) {
  if (!eg.graph.boundary_vertices().empty() || eg.graph.empty()) return eg;
  EmbeddedPartialGraph r = eg;
  VertexId v = r.graph.vertices().front();
  r.graph.set_boundary(v, true);
  r.boundary_order = {v};
  return r;
}

namespace {

void check_rotation_data(const EmbeddedPartialGraph& eg) {
  const PartialGraph& g = eg.graph;
  if (g.empty()) throw GraphError("embedding of an empty graph");
  if (!is_connected(g)) throw GraphError("embedded graph must be connected");
  for (VertexId v : g.vertices()) {
    auto it = eg.rotation.find(v);
    if (it == eg.rotation.end()) throw GraphError("rotation missing at vertex " + std::to_string(v));
    std::vector<Dart> a = it->second;
    std::sort(a.begin(), a.end());
    if (a != g.out_darts(v)) throw GraphError("rotation at vertex " + std::to_string(v) + " does not list its darts");
  }
  if (eg.rotation.size() != g.num_vertices()) throw GraphError("rotation names unknown vertices");
  std::vector<VertexId> b = eg.boundary_order;
  std::sort(b.begin(), b.end());
  if (b != g.boundary_vertices() || std::adjacent_find(b.begin(), b.end()) != b.end())
    throw GraphError("boundary order must list each boundary vertex once");
  if (b.empty()) throw GraphError("embedding needs a boundary vertex");
}

}  // namespace

void validate_embedding(const EmbeddedPartialGraph& eg) { trace_faces(eg); }

FaceStructure trace_faces(const EmbeddedPartialGraph& eg) {
  check_rotation_data(eg);
  AugMap m(eg);
  std::vector<int> order;
  for (std::size_t i = 0; i < m.k; ++i) order.push_back(AugMap::arc(i, true));
  for (Dart d : eg.graph.darts()) order.push_back(d);
  for (std::size_t i = 0; i < m.k; ++i) order.push_back(AugMap::arc(i, false));

  std::set<int> seen;
  std::vector<std::vector<int>> cycles;
  for (int start : order) {
    if (seen.count(start)) continue;
    std::vector<int> c;
    int a = start;
    do {
      if (!seen.insert(a).second) throw GraphError("rotation system does not close up into faces");
      c.push_back(a);
      a = m.next(a);
    } while (a != start);
    cycles.push_back(std::move(c));
  }

  FaceStructure fs;
  std::size_t exterior = 0;
  for (const auto& c : cycles) {
    bool all_ccw = std::all_of(c.begin(), c.end(), [](int a) { return AugMap::is_arc(a) && AugMap::arc_id(a) % 2 == 0; });
    if (all_ccw) {
      if (c.size() != m.k) throw GraphError("boundary arcs are not consecutive on the disk boundary");
      ++exterior;
      continue;
    }
    Face f;
    for (int a : c) {
      if (!AugMap::is_arc(a)) continue;
      if (AugMap::arc_id(a) % 2 == 0) throw GraphError("counterclockwise arc inside the disk");
      if (f.arc) throw GraphError("a face meets the disk boundary twice");
      f.arc = static_cast<std::size_t>(AugMap::arc_id(a) / 2);
    }
    for (int a : c) f.walk.push_back(to_face_dart(a));
    std::size_t idx = fs.faces.size();
    for (int a : c)
      if (!AugMap::is_arc(a)) fs.face_of[a] = idx;
    fs.faces.push_back(std::move(f));
  }
  if (exterior != 1) throw GraphError("no single exterior face");
  long chi = static_cast<long>(eg.graph.num_vertices()) - static_cast<long>(eg.graph.num_edges() + m.k) +
             static_cast<long>(cycles.size());
  if (chi != 2) throw GraphError("rotation system is not a disk embedding (Euler characteristic " + std::to_string(chi) + ")");
  return fs;
}

DualNetwork dual(const Network& n, const EmbeddedPartialGraph& eg_in) {
  EmbeddedPartialGraph eg = designate_boundary(eg_in);
  PartialGraph plain = n.graph;
  if (n.graph.boundary_vertices().empty() && !n.graph.empty()) plain.set_boundary(n.graph.vertices().front(), true);
  if (plain != eg.graph) throw PreconditionError("embedding does not match the network's graph");
  if (!n.is_normalized()) throw PreconditionError("dual network needs d == 0");
  for (const auto& [k, w] : n.w)
    if (!n.ring.is_unit(w)) throw PreconditionError("dual network needs invertible weights (edge " + std::to_string(k) + ")");

  DualNetwork r;
  r.primal_faces = trace_faces(eg);
  const auto& faces = r.primal_faces.faces;
  PartialGraph& dg = r.embedded.graph;
  for (std::size_t i = 0; i < faces.size(); ++i) dg.add_vertex_with_id(static_cast<VertexId>(i), faces[i].boundary());
  for (EdgeKey k : eg.graph.edge_keys())
    dg.add_edge_with_key(k, static_cast<VertexId>(r.primal_faces.face_of.at(dart_of(k, false))),
                         static_cast<VertexId>(r.primal_faces.face_of.at(dart_of(k, true))));
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& walk = faces[i].walk;
    // Start right after the arc so the reversed list ends just before it.
    std::size_t start = 0;
    for (std::size_t j = 0; j < walk.size(); ++j)
      if (walk[j].arc) start = j + 1;
    std::vector<Dart> rot;
    for (std::size_t j = 0; j < walk.size(); ++j) {
      const FaceDart& fd = walk[(start + j) % walk.size()];
      if (!fd.arc) rot.push_back(fd.id);
    }
    std::reverse(rot.begin(), rot.end());
    r.embedded.rotation[static_cast<VertexId>(i)] = rot;
  }
  std::vector<std::pair<std::size_t, VertexId>> bd;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].arc) bd.emplace_back(*faces[i].arc, static_cast<VertexId>(i));
  std::sort(bd.begin(), bd.end());
  for (const auto& p : bd) r.embedded.boundary_order.push_back(p.second);

  r.network.graph = dg;
  r.network.ring = n.ring;
  for (EdgeKey k : dg.edge_keys()) r.network.w[k] = n.ring.normalize(1 / n.weight(k));
  for (VertexId v : dg.vertices()) r.network.d[v] = 0;
  validate_network(r.network);
  return r;
}

bool double_dual_check(const Network& n, const EmbeddedPartialGraph& eg_in) {
  EmbeddedPartialGraph eg = designate_boundary(eg_in);
  DualNetwork d1 = dual(n, eg);
  DualNetwork d2 = dual(d1.network, d1.embedded);
  const PartialGraph& g = eg.graph;
  const PartialGraph& gg = d2.embedded.graph;
  if (gg.num_vertices() != g.num_vertices() || gg.num_edges() != g.num_edges()) return false;

  // Face F of the dual around x: every dual dart e† in F has e_- = x.
  std::map<VertexId, VertexId> to_primal;
  const auto& faces = d2.primal_faces.faces;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    VertexId x = -1;
    for (const FaceDart& fd : faces[i].walk) {
      VertexId y = fd.arc ? eg.boundary_order[(fd.id / 2 + 1) % eg.boundary_order.size()] : g.head(fd.id);
      if (x >= 0 && x != y) return false;
      x = y;
    }
    to_primal[static_cast<VertexId>(i)] = x;
  }
  std::set<VertexId> image;
  for (const auto& [f, x] : to_primal) image.insert(x);
  if (image.size() != g.num_vertices()) return false;
  for (const auto& [f, x] : to_primal) {
    if (gg.is_boundary(f) != g.is_boundary(x)) return false;
    std::vector<Dart> expect;
    for (Dart dd : d2.embedded.rotation.at(f)) expect.push_back(reverse(dd));
    const auto& actual = eg.rotation.at(x);
    if (expect.size() != actual.size()) return false;
    // Interior rotations are cyclic; at a boundary vertex the arcs fix the start.
    if (!g.is_boundary(x) && !expect.empty()) {
      auto it = std::find(expect.begin(), expect.end(), actual.front());
      if (it == expect.end()) return false;
      std::rotate(expect.begin(), it, expect.end());
    }
    if (expect != actual) return false;
  }
  for (EdgeKey k : g.edge_keys()) {
    if (to_primal.at(gg.tail(dart_of(k))) != g.head(dart_of(k))) return false;
    if (to_primal.at(gg.head(dart_of(k))) != g.tail(dart_of(k))) return false;
    if (d2.network.weight(k) != n.weight(k)) return false;
  }
  for (std::size_t i = 0; i < d2.embedded.boundary_order.size(); ++i) {
    VertexId x = to_primal.at(d2.embedded.boundary_order[i]);
    if (x != eg.boundary_order[(i + 1) % eg.boundary_order.size()]) return false;
  }
  return true;
}

DualityReport duality_report(const Network& n, const EmbeddedPartialGraph& eg) {
  if (!n.is_normalized() || !n.is_unit_weight()) throw PreconditionError("duality check needs a normalized unit-weight network");
  Network primal = n;
  if (primal.graph.boundary_vertices().empty() && !primal.graph.empty())
    primal.graph.set_boundary(primal.graph.vertices().front(), true);
  DualNetwork d = dual(n, eg);
  return {upsilon_reduced(primal), upsilon_reduced(d.network)};
}

bool verify_duality(const Network& n, const EmbeddedPartialGraph& eg) { return duality_report(n, eg).agree(); }

Conjugate harmonic_conjugate(const Network& n, const EmbeddedPartialGraph& eg, const VertexFunction& u) {
  if (n.ring.kind == RingKind::Modular && u.ring != n.ring) throw PreconditionError("function and network rings differ");
  const Ring& m = u.ring;
  for (const auto& [k, w] : n.w)
    if (!m.is_unit(m.normalize(w))) throw PreconditionError("weights must be invertible in the coefficient module");
  Conjugate c{dual(n, eg), {m, {}}};
  const PartialGraph& dg = c.dual.embedded.graph;
  // dv(e†) = v(e†_+) - v(e†_-) = w(e) (u(e_+) - u(e_-)).
  auto dv = [&](Dart e) { return m.normalize(n.weight(edge_of(e)) * (u(n.graph.tail(e)) - u(n.graph.head(e)))); };
  std::map<VertexId, Rat>& v = c.v.values;
  std::deque<VertexId> queue;
  for (VertexId root : dg.vertices()) {
    if (v.count(root)) continue;
    v[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
      VertexId a = queue.front();
      queue.pop_front();
      for (Dart e : dg.out_darts(a)) {
        VertexId b = dg.head(e);
        Rat val = m.normalize(v[a] - dv(e));
        auto it = v.find(b);
        if (it == v.end()) {
          v[b] = val;
          queue.push_back(b);
        } else if (it->second != val) {
          throw PreconditionError("function is not harmonic: conjugate differential is not closed");
        }
      }
    }
  }
  return c;
}

namespace {

struct P {
  long x, y;
};
long cross(P o, P a, P b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }
int sgn(long v) { return (v > 0) - (v < 0); }

bool on_segment_interior(P a, P b, P p) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y) && !(p.x == a.x && p.y == a.y) && !(p.x == b.x && p.y == b.y);
}

bool proper_cross(P a, P b, P c, P d) {
  return sgn(cross(a, b, c)) * sgn(cross(a, b, d)) < 0 && sgn(cross(c, d, a)) * sgn(cross(c, d, b)) < 0;
}

// Counterclockwise angular comparison of directions measured from ref.
bool angle_less(P ref, P a, P b) {
  auto half = [&](P v) {
    long c = ref.x * v.y - ref.y * v.x, d = ref.x * v.x + ref.y * v.y;
    return (c > 0 || (c == 0 && d > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return a.x * b.y - a.y * b.x > 0;
}

}  // namespace

EmbeddedPartialGraph random_circular_planar(std::mt19937_64& rng, std::size_t max_vertices) {
  if (max_vertices < 3) throw PreconditionError("random circular planar graphs need at least 3 vertices");
  const long scale = 3;
  std::size_t kmax = std::min<std::size_t>(max_vertices, 5);
  std::size_t k = std::uniform_int_distribution<std::size_t>(3, kmax)(rng);
  std::vector<P> pts;
  for (std::size_t t = 0; t < k; ++t) pts.push_back({scale * static_cast<long>(t), scale * static_cast<long>(t * t)});
  std::vector<P> inner;
  for (long x = 0; x <= pts.back().x; ++x)
    for (long y = 0; y <= pts.back().y; ++y) {
      P p{x, y};
      bool inside = true;
      for (std::size_t i = 0; i < k; ++i)
        if (cross(pts[i], pts[(i + 1) % k], p) <= 0) inside = false;
      if (inside) inner.push_back(p);
    }
  std::shuffle(inner.begin(), inner.end(), rng);
  std::size_t ni = std::uniform_int_distribution<std::size_t>(0, std::min(max_vertices - k, inner.size()))(rng);
  pts.insert(pts.end(), inner.begin(), inner.begin() + static_cast<long>(ni));
  const std::size_t nv = pts.size();

  std::vector<std::pair<std::size_t, std::size_t>> pairs, edges;
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      bool blocked = false;
      for (std::size_t c = 0; c < nv; ++c)
        if (c != a && c != b && on_segment_interior(pts[a], pts[b], pts[c])) blocked = true;
      if (!blocked) pairs.emplace_back(a, b);
    }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  auto crosses = [&](std::pair<std::size_t, std::size_t> e) {
    for (const auto& f : edges)
      if (proper_cross(pts[e.first], pts[e.second], pts[f.first], pts[f.second])) return true;
    return false;
  };
  std::bernoulli_distribution keep(0.5);
  for (const auto& e : pairs)
    if (keep(rng) && !crosses(e)) edges.push_back(e);
  std::vector<std::size_t> comp(nv);
  auto find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  std::iota(comp.begin(), comp.end(), 0);
  for (const auto& e : edges) comp[find(e.first)] = find(e.second);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : pairs)
      if (find(e.first) != find(e.second) && !crosses(e)) {
        edges.push_back(e);
        comp[find(e.first)] = find(e.second);
        changed = true;
      }
  }

  EmbeddedPartialGraph eg;
  for (std::size_t i = 0; i < nv; ++i) eg.graph.add_vertex_with_id(static_cast<VertexId>(i), i < k);
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) eg.graph.add_edge(static_cast<VertexId>(e.first), static_cast<VertexId>(e.second));
  for (std::size_t i = 0; i < k; ++i) eg.boundary_order.push_back(static_cast<VertexId>(i));
  for (VertexId v : eg.graph.vertices()) {
    P o = pts[static_cast<std::size_t>(v)];
    auto dir = [&](Dart d) {
      P h = pts[static_cast<std::size_t>(eg.graph.head(d))];
      return P{h.x - o.x, h.y - o.y};
    };
    P ref{1, 0};
    if (static_cast<std::size_t>(v) < k) {
      P nxt = pts[(static_cast<std::size_t>(v) + 1) % k];
      ref = {nxt.x - o.x, nxt.y - o.y};
    }
    std::vector<Dart> r = eg.graph.out_darts(v);
    std::sort(r.begin(), r.end(), [&](Dart a, Dart b) { return angle_less(ref, dir(a), dir(b)); });
    eg.rotation[v] = r;
  }
  validate_embedding(eg);
  return eg;
}

}  // namespace upsilon
