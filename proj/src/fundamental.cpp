#include "upsilon/fundamental.hpp"

namespace upsilon {

UpsilonReport upsilon(const Network& n) {
  UpsilonReport r;
  r.presentation = interior_block(n);
  r.decomposition = cokernel(r.presentation);
  r.nondegenerate = rank_over_Q(r.presentation) == r.presentation.cols();
  if (r.nondegenerate && r.decomposition.free_rank != n.graph.boundary_vertices().size())
    throw PreconditionError("internal: free rank differs from the boundary size");
  return r;
}

IntMatrix reduced_presentation(const Network& n) {
  if (!n.is_normalized()) throw PreconditionError("reduced module needs d == 0");
  auto vs = n.graph.vertices();
  if (vs.empty()) return IntMatrix(0, 0);
  std::vector<VertexId> rows(vs.begin() + 1, vs.end());
  return laplacian_int(n, rows, n.graph.interior_vertices());
}

ModuleDecomposition upsilon_reduced(const Network& n) { return cokernel(reduced_presentation(n)); }

ModuleDecomposition critical_group(const PartialGraph& g) {
  if (!g.boundary_vertices().empty()) throw PreconditionError("critical group needs a graph without boundary");
  if (g.empty() || !is_connected(g)) throw PreconditionError("critical group needs a connected graph");
  ModuleDecomposition direct = upsilon(std_network(g)).decomposition.torsion();
  PartialGraph h = g;
  h.set_boundary(g.vertices().front(), true);
  ModuleDecomposition grounded = upsilon(std_network(h)).decomposition;
  if (grounded.free_rank != 1 || grounded.torsion() != direct)
    throw PreconditionError("internal: critical group computations disagree");
  return direct;
}

TorsionCrosscheck torsion_crosscheck_report(const Network& n) {
  if (!is_nondegenerate(n)) throw PreconditionError("torsion cross-check needs a non-degenerate network");
  IntMatrix block = interior_block(n);
  TorsionCrosscheck c;
  c.cokernel_torsion = cokernel(block).torsion();
  c.transpose_cokernel = cokernel(block.transpose());
  c.u0_torsion = U0_QmodZ(n);
  return c;
}

bool torsion_crosscheck(const Network& n) { return torsion_crosscheck_report(n).agree(); }

Int spanning_tree_count(const PartialGraph& g) {
  if (g.empty() || !is_connected(g)) throw PreconditionError("spanning tree count needs a connected graph");
  PartialGraph h = g;
  for (VertexId v : h.vertices()) h.set_boundary(v, false);
  auto vs = h.vertices();
  std::vector<VertexId> rest(vs.begin() + 1, vs.end());
  return determinant(laplacian_int(std_network(h), rest, rest));
}

std::size_t eigen_multiplicity(const RatMatrix& m, const Rat& lambda) {
  if (!m.is_square()) throw PreconditionError("eigenvalue multiplicity of a non-square matrix");
  RatMatrix a = RatMatrix::identity(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) a(i, i) = lambda;
  return m.rows() - rank_over_Q(a - m);
}

std::size_t eigen_multiplicity(const Network& n, const Rat& lambda) {
  if (n.ring.kind == RingKind::Modular) throw PreconditionError("eigenvalues need integer or rational scalars");
  return eigen_multiplicity(laplacian_matrix(n), lambda);
}

IntPoly laplacian_charpoly(const Network& n) {
  auto vs = n.graph.vertices();
  return charpoly(laplacian_int(n, vs, vs));
}

bool charpoly_divisibility_check(const Morphism& f, const Network& n1, const Network& n2) {
  DegreeTable deg = validate_network_morphism(f, n1, n2);
  if (deg.empty()) throw PreconditionError("source graph is empty");
  std::size_t k = deg.begin()->second;
  for (const auto& [x, dx] : deg)
    if (dx != k) throw PreconditionError("morphism degree is not constant (vertex " + std::to_string(x) + ")");
  if (k == 0) throw PreconditionError("morphism is constant");
  if (!f.source.boundary_vertices().empty() || !f.target.boundary_vertices().empty())
    throw PreconditionError("charpoly divisibility needs graphs without boundary");
  RatPoly p1 = poly_scale_argument(to_rational(laplacian_charpoly(n1)), Rat(static_cast<long>(k)));
  RatPoly p2 = to_rational(laplacian_charpoly(n2));
  return poly_divides(p2, p1);
}

}  // namespace upsilon
