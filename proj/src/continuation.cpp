#include "upsilon/continuation.hpp"

#include <algorithm>

namespace upsilon {

namespace {

void check_index(std::size_t m, std::size_t j) {
  if (j >= m) throw PreconditionError("boundary label " + std::to_string(j) + " out of range");
}

std::size_t label_of(const std::vector<VertexId>& labels, VertexId v) {
  auto it = std::find(labels.begin(), labels.end(), v);
  if (it == labels.end()) throw PreconditionError("vertex " + std::to_string(v) + " has no label");
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

BoundaryTransform spike_transform(std::size_t m, std::size_t j, const Rat& w, const Rat& d) {
  check_index(m, j);
  if (w == 0) throw PreconditionError("spike weight must be nonzero");
  BoundaryTransform t{BoundaryTransform::Kind::Spike, RatMatrix::identity(2 * m), 0, j, w, d};
  Rat winv = 1 / w;
  t.matrix(j, m + j) = winv;
  t.matrix(m + j, j) = d;
  t.matrix(m + j, m + j) += d * winv;
  return t;
}

BoundaryTransform edge_transform(std::size_t m, std::size_t i, std::size_t j, const Rat& w) {
  check_index(m, i);
  check_index(m, j);
  if (i == j) throw PreconditionError("boundary edge needs distinct labels");
  if (w == 0) throw PreconditionError("edge weight must be nonzero");
  BoundaryTransform t{BoundaryTransform::Kind::Edge, RatMatrix::identity(2 * m), i, j, w, 0};
  t.matrix(m + i, i) += w;
  t.matrix(m + j, j) += w;
  t.matrix(m + i, j) -= w;
  t.matrix(m + j, i) -= w;
  return t;
}

BoundaryTransform initial_transform(const std::vector<Rat>& d) {
  const std::size_t m = d.size();
  BoundaryTransform t{BoundaryTransform::Kind::Initial, RatMatrix::identity(2 * m), 0, 0, 0, 0};
  for (std::size_t k = 0; k < m; ++k) t.matrix(m + k, k) = d[k];
  return t;
}

bool is_symplectic(const RatMatrix& t) {
  if (!t.is_square() || t.rows() % 2 != 0) return false;
  const std::size_t m = t.rows() / 2;
  RatMatrix j(2 * m, 2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    j(k, m + k) = -1;
    j(m + k, k) = 1;
  }
  return t.transpose() * j * t == j;
}

ContinuationPlan make_plan(const Network& n, const Filtration& f) {
  if (f.graphs.empty() || f.graphs.back() != n.graph) throw PreconditionError("filtration does not end at the network's graph");
  if (f.labellings.size() != f.graphs.size()) throw PreconditionError("filtration carries no labelling");
  const std::size_t m = f.labellings[0].size();
  ContinuationPlan p{n, f, {}};
  std::vector<Rat> d;
  for (VertexId v : f.labellings[0]) d.push_back(n.offset(v));
  p.transforms.push_back(initial_transform(d));
  for (std::size_t k = 0; k < f.ops.size(); ++k) {
    const LayerOp& op = f.ops[k];
    const auto& labels = f.labellings[k + 1];
    if (labels.size() != m) throw PreconditionError("labellings change size along the filtration");
    const Rat& w = n.weight(op.edge);
    if (!n.ring.is_unit(w)) throw PreconditionError("continuation needs unit weights");
    if (op.kind == OpKind::ContractBoundarySpike)
      p.transforms.push_back(spike_transform(m, label_of(labels, op.vertex), w, n.offset(op.vertex)));
    else if (op.kind == OpKind::DeleteBoundaryEdge)
      p.transforms.push_back(edge_transform(m, label_of(labels, op.ends[0]), label_of(labels, op.ends[1]), w));
    else
      throw PreconditionError("standard form filtration adjoins isolated vertices first");
  }
  return p;
}

ContinuationPlan make_plan(const Network& n) {
  auto f = standard_form_filtration(n.graph);
  if (!f) throw PreconditionError("graph is not layerable");
  return make_plan(n, *f);
}

RatMatrix plan_product(const ContinuationPlan& p) {
  RatMatrix prod = RatMatrix::identity(p.transforms.front().matrix.rows());
  for (const auto& t : p.transforms) prod = t.matrix * prod;
  return prod;
}

VertexFunction continue_harmonic(const ContinuationPlan& p, const std::vector<Rat>& phi, const Ring& ring) {
  const auto& f = p.filtration;
  const std::size_t m = f.labellings[0].size();
  if (phi.size() != m) throw PreconditionError("boundary data has the wrong length");
  std::vector<Rat> x(2 * m, Rat(0));
  for (std::size_t k = 0; k < m; ++k) x[k] = phi[k];
  std::map<VertexId, Rat> values;
  for (std::size_t s = 0; s < p.transforms.size(); ++s) {
    x = p.transforms[s].matrix.apply(x);
    for (std::size_t k = 0; k < m; ++k) values[f.labellings[s][k]] = x[k];
  }
  VertexFunction u{ring, {}};
  for (VertexId v : p.network.graph.vertices()) {
    auto it = values.find(v);
    if (it == values.end()) throw PreconditionError("internal: vertex never reached the boundary");
    u.values[v] = ring.normalize(it->second);
  }
  return u;
}

U0Matrix u0_matrix_A(const Network& n, const std::set<VertexId>& s, const std::vector<LayerOp>& ops_in) {
  PartialGraph gp = make_boundary(n.graph, s);
  std::vector<LayerOp> ops = ops_in.empty() ? greedy_edge_ops(gp) : ops_in;
  std::vector<VertexId> top(s.begin(), s.end());
  for (VertexId v : n.graph.boundary_vertices()) top.push_back(v);
  Filtration gf;
  try {
    gf = standard_form_from_ops(gp, ops, top);
  } catch (const PreconditionError&) {
    throw PreconditionError("graph with S made boundary is not layerable");
  }
  const std::size_t nst = gf.graphs.size();

  // H_j from G_j: vertices V(G') - interior(G_j), edges E(G') - E(G_j),
  // interior V(G') - V(G_j), boundary = boundary(G_j).
  std::vector<PartialGraph> hs(nst);
  for (std::size_t j = 0; j < nst; ++j) {
    const PartialGraph& gj = gf.graphs[j];
    std::set<VertexId> vs, interior;
    std::set<EdgeKey> es;
    for (VertexId v : gp.vertices()) {
      if (!gj.has_vertex(v)) {
        vs.insert(v);
        interior.insert(v);
      } else if (gj.is_boundary(v)) {
        vs.insert(v);
      }
    }
    for (EdgeKey k : gp.edge_keys())
      if (!gj.has_edge(k)) es.insert(k);
    hs[j] = induced_sub_graph(gp, vs, es, interior);
  }

  // G_j -> G_{j+1} adjoining a spike (or edge) means H_{j+1} -> H_j adjoins one,
  // with the spike's outer end swapped. In the H filtration stage k is H_{n-k}.
  Filtration hf;
  const std::size_t nops = gf.ops.size();
  for (std::size_t k = 0; k < nst; ++k) {
    hf.graphs.push_back(hs[nops - k]);
    hf.labellings.push_back(gf.labellings[nops - k]);
  }
  for (std::size_t k = 0; k < nops; ++k) {
    LayerOp op = gf.ops[nops - 1 - k];
    if (op.kind == OpKind::ContractBoundarySpike) op.vertex = op.spike_inner();
    if (apply_op(hf.graphs[k + 1], op) != hf.graphs[k])
      throw PreconditionError("internal: complementary filtration is inconsistent");
    hf.ops.push_back(op);
  }
  if (hf.graphs[0].num_edges() != 0 || !hf.graphs[0].interior_vertices().empty())
    throw PreconditionError("internal: complementary filtration does not start at isolated vertices");

  Network nh = n;
  nh.graph = hs[0];
  U0Matrix r;
  r.h_plan = make_plan(nh, hf);
  r.g_filtration = std::move(gf);
  r.s_order.assign(s.begin(), s.end());
  r.row_vertices = r.h_plan.filtration.labellings.back();
  const std::size_t m = top.size(), sc = s.size();
  RatMatrix prod = plan_product(r.h_plan);
  r.A = prod.block(m, 0, m, sc);
  return r;
}

ModuleDecomposition u0_via_continuation(const Network& n, const std::set<VertexId>& s) {
  U0Matrix a = u0_matrix_A(n, s);
  if (!is_integral(a.A)) throw PreconditionError("matrix A is not integral; Q/Z torsion needs integer entries");
  try {
    return kernel_QmodZ_torsion(to_integer(a.A));
  } catch (const DivisibleKernelError&) {
    throw PreconditionError("degenerate network: U0 with Q/Z coefficients has a divisible part");
  }
}

VertexFunction u0_function(const U0Matrix& a, const std::vector<Rat>& phi_s, const Ring& ring) {
  if (phi_s.size() != a.s_order.size()) throw PreconditionError("parameters must match S");
  std::vector<Rat> phi(a.h_plan.filtration.labellings[0].size(), Rat(0));
  std::copy(phi_s.begin(), phi_s.end(), phi.begin());
  return continue_harmonic(a.h_plan, phi, ring);
}

std::set<VertexId> find_layering_set(const PartialGraph& g) {
  std::set<VertexId> s;
  for (;;) {
    PartialGraph flower = reduce_to_flower(make_boundary(g, s)).flower;
    if (flower.empty()) return s;
    VertexId pick = -1;
    for (VertexId v : flower.interior_vertices()) {
      auto nb = flower.neighbours(v);
      if (std::any_of(nb.begin(), nb.end(), [&](VertexId x) { return flower.is_boundary(x); })) {
        pick = v;
        break;
      }
    }
    if (pick < 0) pick = flower.interior_vertices().front();
    s.insert(pick);
  }
}

std::size_t invariant_factor_bound(const PartialGraph& g, const std::set<VertexId>& s) {
  if (!g.boundary_vertices().empty()) throw PreconditionError("invariant factor bound needs a graph without boundary");
  if (s.empty()) throw PreconditionError("S must be nonempty");
  if (!is_layerable(make_boundary(g, s))) throw PreconditionError("graph with S made boundary is not layerable");
  return s.size() - 1;
}

bool multiplicity_bound_check(const Network& n, const std::set<VertexId>& s, const Rat& lambda) {
  if (!is_layerable(make_boundary(n.graph, s))) throw PreconditionError("graph with S made boundary is not layerable");
  return eigen_multiplicity(n, lambda) <= s.size();
}

}  // namespace upsilon
