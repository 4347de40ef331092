#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "upsilon/planar.hpp"

namespace upsilon {

// K_n on ids 0..n-1; the listed vertices are boundary.
PartialGraph complete_graph(std::size_t n, const std::set<VertexId>& boundary = {});
// m boundary vertices 0..m-1, n interior vertices m..m+n-1, every boundary-interior pair joined.
PartialGraph complete_bipartite(std::size_t m, std::size_t n);
// C_n on ids 0..n-1 with edge k from k to k+1.
PartialGraph cycle(std::size_t n, const std::set<VertexId>& boundary = {});
// Q_n on bit masks 0..2^n-1.
PartialGraph cube(std::size_t n);
// The facet of Q_n with lowest bit 0.
std::set<VertexId> cube_facet(std::size_t n);
// Hub 0, rim 1..n counterclockwise; spokes are keys 0..n-1, rim edge k -> k+1 is key n+k-1.
EmbeddedPartialGraph wheel(std::size_t n, bool hub_boundary);

// CLF(m, n): (j, k) with j in Z/m, k in 0..n, id k m + j, row k = 0 boundary.
// Edges (j,k) ~ (j+1, n-k+1) for k >= 1 and (j,k) ~ (j+1, n-k) for k >= 0.
PartialGraph clf(std::size_t m, std::size_t n);
VertexId clf_vertex(std::size_t m, std::size_t j, std::size_t k);
// CLF'(m, n): (x, y) with x in Z/2m, y in 0..n+1, x + y even, ids in (y, x) order;
// rows 0 and n+1 are boundary; edges (x,y) ~ (x+1, y+1) and (x,y) ~ (x+1, y-1).
PartialGraph clf_prime(std::size_t m, std::size_t n);
VertexId clf_prime_vertex(std::size_t m, std::size_t n, std::size_t x, std::size_t y);
// CLF(2m, n) -> CLF'(m, 2n): (j, k) -> (j, 2k) for j even and (j, 2(n-k)+1) for j odd.
Morphism clf_to_clf_prime(std::size_t m, std::size_t n);
// CLF(k m, n) -> CLF(m, n), (j, k') -> (j mod m, k').
Morphism clf_rotation_quotient(std::size_t k, std::size_t m, std::size_t n);

// Vertex map extended to edges: an edge whose ends meet collapses, otherwise it
// goes to the only target edge between the images.
Morphism morphism_from_vertex_map(const PartialGraph& source, const PartialGraph& target,
                                  const std::map<VertexId, VertexId>& vertex_map);

// Small named example graphs.
namespace samples {
// v, w, z, x, y with ids 0..4, boundary z only; S = {x, y} = {3, 4}.
PartialGraph worked_example();
std::set<VertexId> worked_example_s();
PartialGraph flower_example();
// Six boundary leaves folded onto the three-leaf star.
Morphism star_fold();
Morphism ladder_projection();
Morphism modified_projection();
// A boundary spike attached to a square, and the square it contracts to.
PartialGraph spike_graph();
PartialGraph spike_contracted();
Morphism pullback_example();
PartialGraph layerable_extension_example();
PartialGraph standard_form_example();
Morphism reducibility_cover();
}  // namespace samples

// Graph or embedded graph produced by `family <name> <params>` in the CLI.
struct FamilyInstance {
  PartialGraph graph;
  std::optional<EmbeddedPartialGraph> embedding;
};
FamilyInstance make_family(const std::string& name, const std::vector<long>& params);
std::vector<std::string> family_names();

}  // namespace upsilon
