#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "upsilon/families.hpp"
#include "upsilon/fundamental.hpp"

using namespace upsilon;

namespace {

ModuleDecomposition direct_sum(const ModuleDecomposition& a, const ModuleDecomposition& b) {
  std::vector<Int> orders = a.invariant_factors;
  orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  return ModuleDecomposition::from_cyclic_orders(a.free_rank + b.free_rank, orders);
}

// Counts spanning trees by trying every (|V| - 1)-subset of edges.
std::size_t enumerate_spanning_trees(const PartialGraph& g) {
  auto vs = g.vertices();
  auto es = g.edge_keys();
  std::size_t need = vs.size() - 1, count = 0;
  auto idx = index_map(vs);
  for (std::size_t mask = 0; mask < (std::size_t{1} << es.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != need) continue;
    std::vector<std::size_t> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    bool acyclic = true;
    for (std::size_t i = 0; i < es.size() && acyclic; ++i) {
      if (!(mask >> i & 1)) continue;
      auto [a, b] = g.endpoints(es[i]);
      std::size_t ra = find(idx.at(a)), rb = find(idx.at(b));
      if (ra == rb) acyclic = false;
      else parent[ra] = rb;
    }
    count += acyclic;
  }
  return count;
}

PartialGraph random_connected(std::mt19937_64& rng, std::size_t nv, std::size_t extra) {
  PartialGraph g;
  for (std::size_t i = 0; i < nv; ++i) g.add_vertex(false);
  for (std::size_t i = 1; i < nv; ++i)
    g.add_edge(static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)), static_cast<VertexId>(i));
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a != b) g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return g;
}

}  // namespace

TEST_CASE("fundamental module examples") {
  auto k32 = upsilon::upsilon(std_network(complete_bipartite(3, 2)));
  CHECK(k32.decomposition == ModuleDecomposition{3, {3}});
  CHECK(k32.nondegenerate);
  CHECK(cokernel(k32.presentation) == k32.decomposition);

  CHECK(upsilon::upsilon(std_network(cycle(4, {0, 2}))).decomposition == ModuleDecomposition{2, {2}});

  PartialGraph points;
  for (int i = 0; i < 4; ++i) points.add_vertex(true);
  CHECK(upsilon::upsilon(std_network(points)).decomposition == ModuleDecomposition{4, {}});
}

TEST_CASE("non-degenerate networks have free rank equal to the boundary size") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    PartialGraph g = random_connected(rng, std::uniform_int_distribution<std::size_t>(2, 8)(rng), 4);
    std::size_t nb = std::uniform_int_distribution<std::size_t>(1, g.num_vertices())(rng);
    for (std::size_t i = 0; i < nb; ++i) g.set_boundary(static_cast<VertexId>(i), true);
    auto r = upsilon::upsilon(std_network(g));
    REQUIRE(r.nondegenerate);
    CHECK(r.decomposition.free_rank == nb);
    CHECK(r.decomposition == cokernel(r.presentation));
  }
}

TEST_CASE("reduced module") {
  PartialGraph k2;
  k2.add_vertex(false);
  k2.add_vertex(false);
  k2.add_edge(0, 1);
  CHECK(upsilon_reduced(std_network(k2)).is_trivial());
  CHECK(upsilon_reduced(std_network(wheel(5, false).graph)) == ModuleDecomposition{0, {11, 11}});

  PartialGraph one, two;
  one.add_vertex(true);
  two.add_vertex(true);
  two.add_vertex(true);
  CHECK(upsilon_reduced(std_network(one)).is_trivial());
  CHECK(upsilon_reduced(std_network(two)) == ModuleDecomposition{1, {}});
  CHECK_THROWS_AS(upsilon_reduced(constant_network(k2, Ring::Z(), 1, 1)), PreconditionError);

  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    PartialGraph g = random_connected(rng, std::uniform_int_distribution<std::size_t>(2, 7)(rng), 3);
    g.set_boundary(0, t % 2 == 0);
    Network n = std_network(g);
    auto full = upsilon::upsilon(n).decomposition, reduced = upsilon_reduced(n);
    CHECK(direct_sum(reduced, ModuleDecomposition{1, {}}) == full);
  }
}

TEST_CASE("reduced module of a wedge sum") {
  Gluing w = wedge_sum(wheel(5, true).graph, 0, complete_graph(4, {0}), 0);
  auto lhs = upsilon_reduced(std_network(w.graph));
  auto rhs = direct_sum(upsilon_reduced(std_network(wheel(5, true).graph)), upsilon_reduced(std_network(complete_graph(4, {0}))));
  CHECK(lhs == rhs);
  CHECK(lhs == ModuleDecomposition::from_cyclic_orders(0, {11, 11, 4, 4}));
}

TEST_CASE("critical groups") {
  CHECK(critical_group(complete_graph(4)) == ModuleDecomposition{0, {4, 4}});
  CHECK(critical_group(wheel(6, false).graph) == ModuleDecomposition{0, {8, 40}});
  PartialGraph tree;
  for (int i = 0; i < 5; ++i) tree.add_vertex(false);
  for (int i = 1; i < 5; ++i) tree.add_edge(i / 2, i);
  CHECK(critical_group(tree).is_trivial());
  CHECK_THROWS_AS(critical_group(disjoint_union(cycle(3), cycle(3)).graph), PreconditionError);
  CHECK_THROWS_AS(critical_group(cycle(3, {0})), PreconditionError);

  // Relabelling the vertices does not change the group.
  PartialGraph g = wheel(7, false).graph, h;
  auto vs = g.vertices();
  std::map<VertexId, VertexId> relabel;
  for (std::size_t i = 0; i < vs.size(); ++i) relabel[vs[i]] = static_cast<VertexId>(vs.size() - 1 - i);
  for (VertexId v = 0; v < static_cast<VertexId>(vs.size()); ++v) h.add_vertex(false);
  for (EdgeKey k : g.edge_keys()) {
    auto [a, b] = g.endpoints(k);
    h.add_edge(relabel[a], relabel[b]);
  }
  CHECK(critical_group(h) == critical_group(g));
}

TEST_CASE("torsion three ways") {
  auto k32 = torsion_crosscheck_report(std_network(complete_bipartite(3, 2)));
  CHECK(k32.agree());
  CHECK(k32.u0_torsion == ModuleDecomposition{0, {3}});
  auto sq = torsion_crosscheck_report(std_network(cycle(4, {0, 2})));
  CHECK(sq.agree());
  CHECK(sq.u0_torsion == ModuleDecomposition{0, {2}});
  auto lay = torsion_crosscheck_report(std_network(samples::standard_form_example()));
  CHECK(lay.agree());
  CHECK(lay.u0_torsion.is_trivial());
  CHECK_THROWS_AS(torsion_crosscheck(std_network(cycle(4))), PreconditionError);
}

TEST_CASE("spanning trees") {
  CHECK(spanning_tree_count(cycle(4)) == 4);
  CHECK(spanning_tree_count(complete_graph(4)) == 16);
  PartialGraph path;
  for (int i = 0; i < 4; ++i) path.add_vertex(false);
  for (int i = 1; i < 4; ++i) path.add_edge(i - 1, i);
  CHECK(spanning_tree_count(path) == 1);
  CHECK_THROWS_AS(spanning_tree_count(disjoint_union(cycle(3), cycle(3)).graph), PreconditionError);

  std::mt19937_64 rng(43);
  for (int t = 0; t < 25; ++t) {
    PartialGraph g = random_connected(rng, std::uniform_int_distribution<std::size_t>(2, 6)(rng), 5);
    Int count = spanning_tree_count(g);
    CHECK(count == enumerate_spanning_trees(g));
    CHECK(count == critical_group(g).torsion_order());
  }
}

TEST_CASE("eigenvalue multiplicities") {
  CHECK(eigen_multiplicity(std_network(wheel(6, false).graph), 0) == 1);
  CHECK(eigen_multiplicity(constant_network(cycle(6), Ring::Z(), -1, 2), 1) == 2);
  CHECK(eigen_multiplicity(constant_network(cycle(6), Ring::Z(), -1, 2), 2) == 1);
  CHECK(eigen_multiplicity(std_network(complete_graph(4)), 4) == 3);
  CHECK(eigen_multiplicity(std_network(complete_graph(4)), Rat(1, 2)) == 0);
  CHECK(laplacian_charpoly(std_network(complete_graph(4))) == IntPoly{0, -64, 48, -12, 1});
}

TEST_CASE("charpoly divisibility under harmonic morphisms") {
  DoubleCover c3 = bipartite_double_cover(cycle(3));
  CHECK(charpoly_divisibility_check(c3.projection, std_network(c3.graph), std_network(cycle(3))));
  Morphism id = identity_morphism(complete_graph(5));
  CHECK(charpoly_divisibility_check(id, std_network(id.source), std_network(id.target)));
  Morphism fold = samples::star_fold();
  CHECK_THROWS_AS(charpoly_divisibility_check(fold, std_network(fold.source), std_network(fold.target)), PreconditionError);
}

TEST_CASE("spanning tree counts divide along surjective morphisms") {
  std::map<VertexId, VertexId> vm;
  for (int i = 0; i < 12; ++i) vm[i] = i % 4;
  Morphism f = morphism_from_vertex_map(cycle(12), cycle(4), vm);
  CHECK(critical_group(cycle(12)).torsion_order() % critical_group(cycle(4)).torsion_order() == 0);
  CHECK(is_covering_map(f));
  DoubleCover k4 = bipartite_double_cover(complete_graph(4));
  CHECK(critical_group(k4.graph).torsion_order() % critical_group(complete_graph(4)).torsion_order() == 0);
  DoubleCover w = bipartite_double_cover(wheel(5, false).graph);
  CHECK(spanning_tree_count(w.graph) % spanning_tree_count(wheel(5, false).graph) == 0);
}
