#pragma once

#include <set>
#include <vector>

#include "upsilon/fundamental.hpp"
#include "upsilon/layering.hpp"

namespace upsilon {

// Map of boundary data (u on the boundary, Lu on the boundary) across one stage.
// Indices are 0-based labels.
struct BoundaryTransform {
  enum class Kind { Initial, Spike, Edge };
  Kind kind = Kind::Initial;
  RatMatrix matrix;
  std::size_t i = 0, j = 0;
  Rat w = 0, d = 0;
};

// [[I, w^-1 E_jj], [d E_jj, I + d w^-1 E_jj]].
BoundaryTransform spike_transform(std::size_t m, std::size_t j, const Rat& w, const Rat& d);
// [[I, 0], [w (E_ii + E_jj - E_ij - E_ji), I]].
BoundaryTransform edge_transform(std::size_t m, std::size_t i, std::size_t j, const Rat& w);
// [[I, 0], [D, I]] with D the diagonal of offsets.
BoundaryTransform initial_transform(const std::vector<Rat>& d);
// T^t J T == J with J = [[0, -I], [I, 0]].
bool is_symplectic(const RatMatrix& t);

// A network with a standard-form filtration of its graph and the transforms
// T_0 (initial) ... T_n, where T_k adjoins ops[k - 1].
struct ContinuationPlan {
  Network network;
  Filtration filtration;
  std::vector<BoundaryTransform> transforms;
};
ContinuationPlan make_plan(const Network& n, const Filtration& f);
// Uses the greedy standard-form filtration; throws if the graph is not layerable.
ContinuationPlan make_plan(const Network& n);
// T_n ... T_0.
RatMatrix plan_product(const ContinuationPlan& p);

// Harmonic function with u o l_0 = phi, values in `ring` (Q or Z/n).
VertexFunction continue_harmonic(const ContinuationPlan& p, const std::vector<Rat>& phi, const Ring& ring);

struct U0Matrix {
  RatMatrix A;                      // rows: boundary of H_0 in label order; columns: S
  std::vector<VertexId> row_vertices;
  std::vector<VertexId> s_order;    // S in column order
  Filtration g_filtration;          // of G with S made boundary
  ContinuationPlan h_plan;          // complementary filtration H_n in ... in H_0
};
// Top-down spike/edge deletions for G with S made boundary may be prescribed;
// by default the greedy order is used. S is labelled first, then the boundary.
U0Matrix u0_matrix_A(const Network& n, const std::set<VertexId>& s, const std::vector<LayerOp>& ops = {});
// Q/Z torsion of ker A.
ModuleDecomposition u0_via_continuation(const Network& n, const std::set<VertexId>& s);
// The element of U0 continued from phi on S (zero on the boundary), in `ring`.
VertexFunction u0_function(const U0Matrix& a, const std::vector<Rat>& phi_s, const Ring& ring);

// Greedy set of interior vertices whose promotion to boundary makes g layerable.
std::set<VertexId> find_layering_set(const PartialGraph& g);
// |S| - 1 for a graph without boundary with G_{S->boundary} layerable.
std::size_t invariant_factor_bound(const PartialGraph& g, const std::set<VertexId>& s);
// eigen_multiplicity(n, lambda) <= |S| with G_{S->boundary} layerable.
bool multiplicity_bound_check(const Network& n, const std::set<VertexId>& s, const Rat& lambda);

}  // namespace upsilon
