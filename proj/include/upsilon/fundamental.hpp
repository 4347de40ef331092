#pragma once

#include "upsilon/network.hpp"

namespace upsilon {

struct UpsilonReport {
  ModuleDecomposition decomposition;
  IntMatrix presentation;  // V rows by interior columns, id order
  bool nondegenerate = false;
};

// Cokernel of L from interior chains to all chains.
UpsilonReport upsilon(const Network& n);
// ker(epsilon) / L(interior chains) in the basis x_i - x_0, x_0 the lowest id; needs d == 0.
ModuleDecomposition upsilon_reduced(const Network& n);
// Presentation matrix used by upsilon_reduced (row x_0 removed).
IntMatrix reduced_presentation(const Network& n);

// Critical group of a connected graph without boundary, computed both as the
// torsion of the fundamental module and with the lowest vertex made boundary.
ModuleDecomposition critical_group(const PartialGraph& g);

struct TorsionCrosscheck {
  ModuleDecomposition cokernel_torsion;    // torsion of coker(L: interior -> all)
  ModuleDecomposition transpose_cokernel;  // coker of the transposed block
  ModuleDecomposition u0_torsion;          // U0 with Q/Z coefficients
  bool agree() const { return cokernel_torsion == transpose_cokernel && transpose_cokernel == u0_torsion; }
};
TorsionCrosscheck torsion_crosscheck_report(const Network& n);
bool torsion_crosscheck(const Network& n);

// Determinant of the standard Laplacian with one row and column removed.
Int spanning_tree_count(const PartialGraph& g);

// Nullity of (lambda I - M) over Q.
std::size_t eigen_multiplicity(const RatMatrix& m, const Rat& lambda);
std::size_t eigen_multiplicity(const Network& n, const Rat& lambda);
IntPoly laplacian_charpoly(const Network& n);

// For a morphism of graphs without boundary whose degree is the constant k:
// whether det(zI - L2) divides det(k z I - L1).
bool charpoly_divisibility_check(const Morphism& f, const Network& n1, const Network& n2);

}  // namespace upsilon
