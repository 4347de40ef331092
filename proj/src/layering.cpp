#include "upsilon/layering.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace upsilon {

namespace {

std::string vstr(long v) { return std::to_string(v); }

LayerOp edge_op(const PartialGraph& g, OpKind kind, EdgeKey k, VertexId leaf) {
  LayerOp op;
  op.kind = kind;
  op.edge = k;
  op.vertex = leaf;
  auto [a, b] = g.endpoints(k);
  op.ends[0] = a;
  op.ends[1] = b;
  return op;
}

// Connected components of g with vertex `skip` removed.
std::vector<std::vector<VertexId>> components_without(const PartialGraph& g, VertexId skip) {
  std::set<VertexId> seen{skip};
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
      for (Dart d : g.out_darts(v))
        if (seen.insert(g.head(d)).second) q.push(g.head(d));
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Sub-graph on a vertex set with every edge between its vertices; flags kept.
PartialGraph induced(const PartialGraph& g, const std::set<VertexId>& vs) {
  PartialGraph h;
  for (VertexId v : vs) h.add_vertex_with_id(v, g.is_boundary(v), g.name(v));
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    if (vs.count(a) && vs.count(b)) h.add_edge_with_key(k, a, b);
  }
  return h;
}

}  // namespace

std::string LayerOp::to_string() const {
  switch (kind) {
    case OpKind::DeleteIsolatedBoundaryVertex: return "delete isolated boundary vertex " + vstr(vertex);
    case OpKind::ContractBoundarySpike:
      return "contract boundary spike " + vstr(edge) + " (" + vstr(vertex) + " -> " + vstr(spike_inner()) + ")";
    case OpKind::DeleteBoundaryEdge:
      return "delete boundary edge " + vstr(edge) + " (" + vstr(ends[0]) + " - " + vstr(ends[1]) + ")";
  }
  return "";
}

std::vector<LayerOp> find_strippable(const PartialGraph& g) {
  std::vector<LayerOp> ops;
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    bool ba = g.is_boundary(a), bb = g.is_boundary(b);
    if (ba && bb) ops.push_back(edge_op(g, OpKind::DeleteBoundaryEdge, k, -1));
    else if (ba && g.degree(a) == 1) ops.push_back(edge_op(g, OpKind::ContractBoundarySpike, k, a));
    else if (bb && g.degree(b) == 1) ops.push_back(edge_op(g, OpKind::ContractBoundarySpike, k, b));
  }
  for (VertexId v : g.boundary_vertices())
    if (g.degree(v) == 0) {
      LayerOp op;
      op.vertex = v;
      ops.push_back(op);
    }
  return ops;
}

bool is_applicable(const PartialGraph& g, const LayerOp& op) {
  switch (op.kind) {
    case OpKind::DeleteIsolatedBoundaryVertex:
      return g.has_vertex(op.vertex) && g.is_boundary(op.vertex) && g.degree(op.vertex) == 0;
    case OpKind::DeleteBoundaryEdge: {
      if (!g.has_edge(op.edge)) return false;
      auto [a, b] = g.endpoints(op.edge);
      return a == op.ends[0] && b == op.ends[1] && g.is_boundary(a) && g.is_boundary(b);
    }
    case OpKind::ContractBoundarySpike: {
      if (!g.has_edge(op.edge)) return false;
      auto [a, b] = g.endpoints(op.edge);
      if (a != op.ends[0] || b != op.ends[1] || (op.vertex != a && op.vertex != b) || a == b) return false;
      return g.is_boundary(op.vertex) && g.degree(op.vertex) == 1 && g.is_interior(op.spike_inner());
    }
  }
  return false;
}

PartialGraph apply_op(const PartialGraph& g, const LayerOp& op) {
  if (!is_applicable(g, op)) throw PreconditionError("operation not applicable: " + op.to_string());
  PartialGraph h = g;
  switch (op.kind) {
    case OpKind::DeleteIsolatedBoundaryVertex: h.remove_vertex(op.vertex); break;
    case OpKind::DeleteBoundaryEdge: h.remove_edge(op.edge); break;
    case OpKind::ContractBoundarySpike:
      h.remove_edge(op.edge);
      h.remove_vertex(op.vertex);
      h.set_boundary(op.spike_inner(), true);
      break;
  }
  return h;
}

Network apply_op(const Network& n, const LayerOp& op) {
  if (op.kind == OpKind::ContractBoundarySpike && is_applicable(n.graph, op) && !n.ring.is_unit(n.weight(op.edge)))
    throw PreconditionError("spike " + vstr(op.edge) + " has a non-unit weight");
  Network r{apply_op(n.graph, op), n.ring, n.w, n.d};
  if (op.edge >= 0) r.w.erase(op.edge);
  if (op.kind != OpKind::DeleteBoundaryEdge) r.d.erase(op.vertex);
  return r;
}

PartialGraph undo_op(const PartialGraph& g, const LayerOp& op) {
  PartialGraph h = g;
  switch (op.kind) {
    case OpKind::DeleteIsolatedBoundaryVertex: h.add_vertex_with_id(op.vertex, true); break;
    case OpKind::DeleteBoundaryEdge: h.add_edge_with_key(op.edge, op.ends[0], op.ends[1]); break;
    case OpKind::ContractBoundarySpike:
      h.add_vertex_with_id(op.vertex, true);
      h.add_edge_with_key(op.edge, op.ends[0], op.ends[1]);
      h.set_boundary(op.spike_inner(), false);
      break;
  }
  return h;
}

FlowerResult reduce_to_flower(const PartialGraph& g, std::mt19937_64* rng) {
  std::vector<PartialGraph> stages{g};
  std::vector<LayerOp> ops;
  for (;;) {
    auto avail = find_strippable(stages.back());
    if (avail.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, avail.size() - 1)(*rng);
    ops.push_back(avail[pick]);
    stages.push_back(apply_op(stages.back(), avail[pick]));
  }
  FlowerResult r;
  r.flower = stages.back();
  std::reverse(stages.begin(), stages.end());
  std::reverse(ops.begin(), ops.end());
  r.filtration.graphs = std::move(stages);
  r.filtration.ops = std::move(ops);
  return r;
}

bool is_flower(const PartialGraph& g) { return find_strippable(g).empty(); }

bool is_layerable(const PartialGraph& g) { return reduce_to_flower(g).flower.empty(); }

Filtration standard_form_from_ops(const PartialGraph& g, const std::vector<LayerOp>& ops,
                                  const std::vector<VertexId>& top_labelling) {
  std::vector<PartialGraph> graphs{g};
  std::vector<VertexId> top = top_labelling.empty() ? g.boundary_vertices() : top_labelling;
  {
    std::vector<VertexId> a = top, b = g.boundary_vertices();
    std::sort(a.begin(), a.end());
    if (a != b) throw PreconditionError("labelling is not a bijection onto the boundary");
  }
  std::vector<std::vector<VertexId>> labels{top};
  for (const LayerOp& op : ops) {
    if (op.kind == OpKind::DeleteIsolatedBoundaryVertex)
      throw PreconditionError("standard form adjoins isolated vertices first; got " + op.to_string());
    graphs.push_back(apply_op(graphs.back(), op));
    std::vector<VertexId> l = labels.back();
    if (op.kind == OpKind::ContractBoundarySpike) std::replace(l.begin(), l.end(), op.vertex, op.spike_inner());
    labels.push_back(std::move(l));
  }
  const PartialGraph& last = graphs.back();
  if (last.num_edges() != 0 || !last.interior_vertices().empty())
    throw PreconditionError("operations do not strip the graph to isolated boundary vertices");
  std::reverse(graphs.begin(), graphs.end());
  std::reverse(labels.begin(), labels.end());
  return Filtration{std::move(graphs), std::vector<LayerOp>(ops.rbegin(), ops.rend()), std::move(labels)};
}

std::vector<LayerOp> greedy_edge_ops(const PartialGraph& g) {
  PartialGraph cur = g;
  std::vector<LayerOp> ops;
  for (;;) {
    auto avail = find_strippable(cur);
    auto it = std::find_if(avail.begin(), avail.end(),
                           [](const LayerOp& op) { return op.kind != OpKind::DeleteIsolatedBoundaryVertex; });
    if (it == avail.end()) break;
    ops.push_back(*it);
    cur = apply_op(cur, *it);
  }
  return ops;
}

std::optional<Filtration> standard_form_filtration(const PartialGraph& g) {
  PartialGraph cur = g;
  auto ops = greedy_edge_ops(g);
  for (const auto& op : ops) cur = apply_op(cur, op);
  if (cur.num_edges() != 0 || !cur.interior_vertices().empty()) return std::nullopt;
  return standard_form_from_ops(g, ops);
}

// ---------------------------------------------------------------- complete reducibility

namespace {

ReductionTrace build_trace(const PartialGraph& g, std::vector<PartialGraph>& leaves) {
  ReductionTrace t;
  t.graph = g;
  if (g.empty()) return t;
  PartialGraph cur = g;
  for (;;) {
    auto avail = find_strippable(cur);
    if (avail.empty()) break;
    t.ops.push_back(avail.front());
    cur = apply_op(cur, avail.front());
  }
  if (!t.ops.empty()) {
    t.kind = ReductionTrace::Kind::Strip;
    t.children.push_back(build_trace(cur, leaves));
    return t;
  }
  auto comps = connected_components(g);
  if (comps.size() >= 2) {
    t.kind = ReductionTrace::Kind::SplitDisjoint;
    std::set<VertexId> first(comps[0].begin(), comps[0].end()), rest;
    for (std::size_t i = 1; i < comps.size(); ++i) rest.insert(comps[i].begin(), comps[i].end());
    t.children.push_back(build_trace(induced(g, first), leaves));
    t.children.push_back(build_trace(induced(g, rest), leaves));
    return t;
  }
  for (VertexId x : g.boundary_vertices()) {
    auto parts = components_without(g, x);
    if (parts.size() < 2) continue;
    t.kind = ReductionTrace::Kind::SplitWedge;
    t.wedge_vertex = x;
    std::set<VertexId> first(parts[0].begin(), parts[0].end()), rest;
    for (std::size_t i = 1; i < parts.size(); ++i) rest.insert(parts[i].begin(), parts[i].end());
    first.insert(x);
    rest.insert(x);
    t.children.push_back(build_trace(induced(g, first), leaves));
    t.children.push_back(build_trace(induced(g, rest), leaves));
    return t;
  }
  t.kind = ReductionTrace::Kind::Irreducible;
  leaves.push_back(g);
  return t;
}

void merge_into(PartialGraph& acc, const PartialGraph& part) {
  for (VertexId v : part.vertices())
    if (!acc.has_vertex(v)) acc.add_vertex_with_id(v, part.is_boundary(v), part.name(v));
  for (EdgeKey k : part.edge_keys()) {
    auto [a, b] = part.endpoints(k);
    acc.add_edge_with_key(k, a, b);
  }
}

void print_trace(const ReductionTrace& t, int depth, std::ostringstream& os) {
  std::string pad(2 * depth, ' ');
  auto verts = [](const PartialGraph& g) {
    std::string s = "{";
    bool first = true;
    for (VertexId v : g.vertices()) {
      s += (first ? "" : ",") + std::to_string(v);
      first = false;
    }
    return s + "}";
  };
  switch (t.kind) {
    case ReductionTrace::Kind::Empty: os << pad << "empty\n"; break;
    case ReductionTrace::Kind::Irreducible: os << pad << "irreducible " << verts(t.graph) << "\n"; break;
    case ReductionTrace::Kind::Strip:
      for (const auto& op : t.ops) os << pad << op.to_string() << "\n";
      break;
    case ReductionTrace::Kind::SplitDisjoint: os << pad << "split disjoint union of " << verts(t.graph) << "\n"; break;
    case ReductionTrace::Kind::SplitWedge: os << pad << "split wedge sum at " << t.wedge_vertex << "\n"; break;
  }
  for (const auto& c : t.children) print_trace(c, t.kind == ReductionTrace::Kind::Strip ? depth : depth + 1, os);
}

}  // namespace

ReducibilityResult is_completely_reducible(const PartialGraph& g) {
  ReducibilityResult r;
  r.trace = build_trace(g, r.irreducible_leaves);
  r.completely_reducible = r.irreducible_leaves.empty();
  return r;
}

PartialGraph replay(const ReductionTrace& t) {
  switch (t.kind) {
    case ReductionTrace::Kind::Empty: return PartialGraph{};
    case ReductionTrace::Kind::Irreducible: return t.graph;
    case ReductionTrace::Kind::Strip: {
      PartialGraph g = replay(t.children.at(0));
      for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) g = undo_op(g, *it);
      return g;
    }
    case ReductionTrace::Kind::SplitDisjoint:
    case ReductionTrace::Kind::SplitWedge: {
      PartialGraph g;
      for (const auto& c : t.children) merge_into(g, replay(c));
      return g;
    }
  }
  return PartialGraph{};
}

bool is_irreducible(const PartialGraph& g) {
  if (g.empty() || !is_flower(g) || !is_connected(g)) return false;
  for (VertexId x : g.boundary_vertices())
    if (components_without(g, x).size() >= 2) return false;
  return true;
}

std::string trace_to_string(const ReductionTrace& t) {
  std::ostringstream os;
  print_trace(t, 0, os);
  return os.str();
}

// ---------------------------------------------------------------- degenerate weights

DegenerateWitness degenerate_weights_general(const PartialGraph& g) {
  if (g.empty() || !is_flower(g)) throw PreconditionError("degenerate weights need a nonempty flower");
  Network n = constant_network(g, Ring::Q(), 1, 0);
  for (VertexId x : g.boundary_vertices()) {
    const auto& darts = g.out_darts(x);
    const std::size_t k = darts.size();
    for (std::size_t i = 0; i < k; ++i) {
      Rat w;
      if (k % 2 == 0) w = (i % 2 == 0) ? 1 : -1;
      else w = (i + 1 < k) ? Rat(1) : Rat(-static_cast<long>(k - 1));
      n.w[edge_of(darts[i])] = w;
    }
  }
  for (VertexId y : g.interior_vertices()) {
    Rat s = 0;
    for (Dart e : g.out_darts(y))
      if (g.is_boundary(g.head(e))) s += n.w[edge_of(e)];
    n.d[y] = -s;
  }
  VertexFunction u = zero_function(g, Ring::Q());
  for (VertexId y : g.interior_vertices()) u.values[y] = 1;
  if (!is_in_U0(n, u)) throw PreconditionError("internal: flower witness is not in U0");
  return {std::move(n), std::move(u)};
}

DegenerateWitness degenerate_network_on(const PartialGraph& g) {
  PartialGraph flower = reduce_to_flower(g).flower;
  if (flower.empty()) throw PreconditionError("graph is layerable; every unit-weight network on it is non-degenerate");
  DegenerateWitness f = degenerate_weights_general(flower);
  Network n = constant_network(g, Ring::Q(), 1, 0);
  for (const auto& [k, w] : f.network.w) n.w[k] = w;
  for (const auto& [v, d] : f.network.d) n.d[v] = d;
  VertexFunction u = zero_function(g, Ring::Q());
  for (const auto& [v, x] : f.u.values) u.values[v] = x;
  if (!is_in_U0(n, u)) throw PreconditionError("internal: extended witness is not in U0");
  return {std::move(n), std::move(u)};
}

namespace {

// Bridges of a multigraph (loops and parallel edges are never bridges).
std::set<EdgeKey> find_bridges(const PartialGraph& g) {
  std::set<EdgeKey> bridges;
  std::map<VertexId, int> disc, low;
  int timer = 0;
  std::function<void(VertexId, EdgeKey)> dfs = [&](VertexId v, EdgeKey via) {
    disc[v] = low[v] = timer++;
    for (Dart d : g.out_darts(v)) {
      EdgeKey k = edge_of(d);
      if (k == via) continue;
      VertexId h = g.head(d);
      if (disc.count(h)) {
        low[v] = std::min(low[v], disc[h]);
      } else {
        dfs(h, k);
        low[v] = std::min(low[v], low[h]);
        if (low[h] > disc[v]) bridges.insert(k);
      }
    }
  };
  for (VertexId v : g.vertices())
    if (!disc.count(v)) dfs(v, -1);
  return bridges;
}

}  // namespace

DegenerateWitness degenerate_weights_normalized(const PartialGraph& g) {
  if (!is_irreducible(g)) throw PreconditionError("normalized degenerate weights need an irreducible graph");
  std::set<EdgeKey> bridges = find_bridges(g);
  std::set<EdgeKey> cyc;
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    if (a != b && !bridges.count(k)) cyc.insert(k);
  }

  // u is constant on the components joined by bridges.
  PartialGraph forest;
  for (VertexId v : g.vertices()) forest.add_vertex_with_id(v, g.is_boundary(v));
  for (EdgeKey k : bridges) {
    auto [a, b] = g.endpoints(k);
    forest.add_edge_with_key(k, a, b);
  }
  VertexFunction u = zero_function(g, Ring::Q());
  long next = 1;
  for (const auto& comp : connected_components(forest)) {
    bool touches = std::any_of(comp.begin(), comp.end(), [&](VertexId v) { return g.is_boundary(v); });
    if (touches) continue;
    for (VertexId v : comp) u.values[v] = next;
    ++next;
  }

  // Fundamental cycles of a spanning forest of the cycle edges.
  std::map<VertexId, Dart> parent;
  std::map<VertexId, int> depth;
  std::set<EdgeKey> tree;
  for (VertexId s : g.vertices()) {
    if (depth.count(s)) continue;
    depth[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (Dart d : g.out_darts(v)) {
        if (!cyc.count(edge_of(d))) continue;
        VertexId h = g.head(d);
        if (depth.count(h)) continue;
        depth[h] = depth[v] + 1;
        parent[h] = d;
        tree.insert(edge_of(d));
        q.push(h);
      }
    }
  }
  std::vector<std::vector<Dart>> cycles;
  for (EdgeKey k : cyc) {
    if (tree.count(k)) continue;
    Dart e = dart_of(k);
    // Path from head(e) back to tail(e) through the tree closes the cycle.
    std::vector<Dart> up_from_head, up_from_tail;
    VertexId a = g.head(e), b = g.tail(e);
    while (depth[a] > depth[b]) {
      up_from_head.push_back(reverse(parent[a]));
      a = g.tail(parent[a]);
    }
    while (depth[b] > depth[a]) {
      up_from_tail.push_back(parent[b]);
      b = g.tail(parent[b]);
    }
    while (a != b) {
      up_from_head.push_back(reverse(parent[a]));
      a = g.tail(parent[a]);
      up_from_tail.push_back(parent[b]);
      b = g.tail(parent[b]);
    }
    std::vector<Dart> c{e};
    c.insert(c.end(), up_from_head.begin(), up_from_head.end());
    c.insert(c.end(), up_from_tail.rbegin(), up_from_tail.rend());
    cycles.push_back(std::move(c));
  }

  // Per-cycle weights 1/du, combined with coefficients t^(j-1) for the first t that avoids zeros.
  std::vector<std::map<EdgeKey, Rat>> wj;
  for (const auto& c : cycles) {
    std::map<EdgeKey, Rat> m;
    for (Dart e : c) {
      Rat du = u(g.tail(e)) - u(g.head(e));
      if (du == 0) throw PreconditionError("internal: cycle edge with constant potential");
      m[edge_of(e)] += 1 / du;
    }
    wj.push_back(std::move(m));
  }
  Network n = constant_network(g, Ring::Q(), 1, 0);
  for (long t = 1;; ++t) {
    std::map<EdgeKey, Rat> w;
    Rat alpha = 1;
    for (const auto& m : wj) {
      for (const auto& [k, x] : m) w[k] += alpha * x;
      alpha *= t;
    }
    bool ok = true;
    for (EdgeKey k : cyc)
      if (w[k] == 0) ok = false;
    if (!ok) continue;
    for (EdgeKey k : cyc) n.w[k] = w[k];
    break;
  }
  if (!is_in_U0(n, u)) throw PreconditionError("internal: normalized witness is not in U0");
  for (VertexId v : g.interior_vertices())
    if (u(v) == 0) throw PreconditionError("internal: normalized witness vanishes at an interior vertex");
  return {std::move(n), std::move(u)};
}

}  // namespace upsilon
