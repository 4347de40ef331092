#include <catch_amalgamated.hpp>

#include <random>

#include "upsilon/families.hpp"
#include "upsilon/planar.hpp"

using namespace upsilon;

namespace {

// Triangle on three boundary points of the circle, listed counterclockwise.
EmbeddedPartialGraph boundary_triangle() {
  EmbeddedPartialGraph eg;
  for (int i = 0; i < 3; ++i) eg.graph.add_vertex(true);
  eg.graph.add_edge(0, 1);
  eg.graph.add_edge(1, 2);
  eg.graph.add_edge(2, 0);
  eg.rotation[0] = {dart_of(0), dart_of(2, true)};
  eg.rotation[1] = {dart_of(1), dart_of(0, true)};
  eg.rotation[2] = {dart_of(2), dart_of(1, true)};
  eg.boundary_order = {0, 1, 2};
  return eg;
}

EmbeddedPartialGraph boundary_edge() {
  EmbeddedPartialGraph eg;
  eg.graph.add_vertex(true);
  eg.graph.add_vertex(true);
  eg.graph.add_edge(0, 1);
  eg.rotation[0] = {dart_of(0)};
  eg.rotation[1] = {dart_of(0, true)};
  eg.boundary_order = {0, 1};
  return eg;
}

// Solves the Dirichlet problem with the given boundary values over Q.
VertexFunction dirichlet(const Network& n, const std::map<VertexId, Rat>& boundary) {
  auto interior = n.graph.interior_vertices();
  auto bd = n.graph.boundary_vertices();
  RatMatrix l = laplacian_matrix(n, interior, interior);
  RatMatrix lb = laplacian_matrix(n, interior, bd);
  std::vector<Rat> rhs(interior.size());
  for (std::size_t i = 0; i < interior.size(); ++i)
    for (std::size_t j = 0; j < bd.size(); ++j) rhs[i] -= lb(i, j) * boundary.at(bd[j]);
  std::vector<Rat> x;
  REQUIRE(solve_unique(l, rhs, x));
  VertexFunction u{Ring::Q(), {}};
  for (VertexId v : bd) u.values[v] = boundary.at(v);
  for (std::size_t i = 0; i < interior.size(); ++i) u.values[interior[i]] = x[i];
  return u;
}

}  // namespace

TEST_CASE("face tracing") {
  EmbeddedPartialGraph tri = boundary_triangle();
  CHECK_NOTHROW(validate_embedding(tri));
  FaceStructure f = trace_faces(tri);
  REQUIRE(f.faces.size() == 4);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(f.faces[i].boundary());
    CHECK(*f.faces[i].arc == i);
    CHECK(f.faces[i].walk.size() == 2);
  }
  CHECK_FALSE(f.faces[3].boundary());
  CHECK(f.faces[3].walk.size() == 3);
  CHECK(f.face_of.size() == 6);

  FaceStructure e = trace_faces(boundary_edge());
  REQUIRE(e.faces.size() == 2);
  CHECK(e.faces[0].boundary());
  CHECK(e.faces[1].boundary());
  CHECK(e.face_of.at(dart_of(0)) != e.face_of.at(dart_of(0, true)));

  // Euler: faces inside the disk = E - V + 1 + number of arcs.
  std::mt19937_64 rng(71);
  for (int t = 0; t < 30; ++t) {
    EmbeddedPartialGraph eg = random_circular_planar(rng, 9);
    CHECK_NOTHROW(validate_embedding(eg));
    FaceStructure fs = trace_faces(eg);
    CHECK(fs.faces.size() == eg.graph.num_edges() - eg.graph.num_vertices() + 1 + eg.boundary_order.size());
    CHECK(fs.face_of.size() == 2 * eg.graph.num_edges());
  }
}

TEST_CASE("invalid embeddings") {
  EmbeddedPartialGraph missing = boundary_triangle();
  missing.rotation.erase(2);
  CHECK_THROWS_AS(validate_embedding(missing), GraphError);

  EmbeddedPartialGraph twice = boundary_triangle();
  twice.boundary_order = {0, 1, 1};
  CHECK_THROWS_AS(validate_embedding(twice), GraphError);

  // Swapping the circle order turns the triangle inside out.
  EmbeddedPartialGraph flipped = boundary_triangle();
  flipped.boundary_order = {0, 2, 1};
  CHECK_THROWS_AS(validate_embedding(flipped), GraphError);

  EmbeddedPartialGraph wrong = boundary_triangle();
  wrong.rotation[0] = {dart_of(0), dart_of(1)};
  CHECK_THROWS_AS(validate_embedding(wrong), GraphError);

  EmbeddedPartialGraph none = wheel(4, false);
  CHECK_THROWS_AS(validate_embedding(none), GraphError);
  EmbeddedPartialGraph designated = designate_boundary(none);
  CHECK(designated.boundary_order == std::vector<VertexId>{0});
  CHECK(designated.graph.is_boundary(0));
  CHECK_NOTHROW(validate_embedding(designated));
}

TEST_CASE("dual networks") {
  EmbeddedPartialGraph e = boundary_edge();
  DualNetwork de = dual(std_network(e.graph), e);
  CHECK(de.network.graph.num_vertices() == 2);
  CHECK(de.network.graph.num_edges() == 1);

  std::mt19937_64 rng(72);
  for (int t = 0; t < 25; ++t) {
    EmbeddedPartialGraph eg = random_circular_planar(rng, 8);
    Network n = std_network(eg.graph);
    n.ring = Ring::Q();
    std::uniform_int_distribution<int> w(-3, 3);
    for (auto& [k, x] : n.w) {
      x = w(rng);
      if (x == 0) x = Rat(1, 2);
    }
    DualNetwork d = dual(n, eg);
    CHECK(d.network.graph.num_edges() == eg.graph.num_edges());
    CHECK(d.network.graph.num_vertices() == d.primal_faces.faces.size());
    for (EdgeKey k : eg.graph.edge_keys()) CHECK(d.network.weight(k) * n.weight(k) == 1);
    CHECK_NOTHROW(validate_embedding(d.embedded));
    CHECK(double_dual_check(n, eg));
  }

  EmbeddedPartialGraph w5 = wheel(5, true);
  DualNetwork d5 = dual(std_network(w5.graph), w5);
  CHECK(are_isomorphic(d5.network.graph, w5.graph, false));

  Network offset = std_network(w5.graph);
  offset.d[1] = 1;
  CHECK_THROWS_AS(dual(offset, w5), PreconditionError);
  Network zero = std_network(w5.graph);
  zero.w[0] = 2;
  CHECK_THROWS_AS(dual(zero, w5), PreconditionError);
  CHECK_THROWS_AS(dual(std_network(cycle(5, {0})), w5), PreconditionError);
}

TEST_CASE("planar duality of reduced modules") {
  EmbeddedPartialGraph w5 = wheel(5, true);
  DualityReport r = duality_report(std_network(w5.graph), w5);
  CHECK(r.agree());
  CHECK(r.primal == ModuleDecomposition{0, {11, 11}});
  CHECK(verify_duality(std_network(boundary_edge().graph), boundary_edge()));
  CHECK(verify_duality(std_network(boundary_triangle().graph), boundary_triangle()));

  Network weighted = std_network(w5.graph);
  weighted.w[0] = 2;
  CHECK_THROWS_AS(duality_report(weighted, w5), PreconditionError);
}

TEST_CASE("harmonic conjugates") {
  EmbeddedPartialGraph w5 = wheel(5, true);
  Network n5 = std_network(w5.graph);
  VertexFunction constant{Ring::Q(), {}};
  for (VertexId v : w5.graph.vertices()) constant.values[v] = 3;
  Conjugate c = harmonic_conjugate(n5, w5, constant);
  for (const auto& [v, x] : c.v.values) CHECK(x == 0);

  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> val(-4, 4);
  int nontrivial = 0;
  for (int t = 0; t < 25; ++t) {
    EmbeddedPartialGraph eg = random_circular_planar(rng, 8);
    Network n = std_network(eg.graph);
    std::bernoulli_distribution sign(0.5);
    for (auto& [k, x] : n.w) x = sign(rng) ? 1 : -1;
    auto interior = eg.graph.interior_vertices();
    if (!interior.empty() && determinant(laplacian_matrix(n, interior, interior)) == 0) continue;
    std::map<VertexId, Rat> bv;
    for (VertexId b : eg.graph.boundary_vertices()) bv[b] = val(rng);
    VertexFunction u = dirichlet(n, bv);
    REQUIRE(is_harmonic(n, u));

    Conjugate cj = harmonic_conjugate(n, eg, u);
    CHECK(cj.v(0) == 0);
    const Network& dn = cj.dual.network;
    for (EdgeKey k : eg.graph.edge_keys()) {
      auto [a, b] = eg.graph.endpoints(k);
      auto [p, q] = dn.graph.endpoints(k);
      CHECK(n.weight(k) * (u(a) - u(b)) == cj.v(p) - cj.v(q));
    }
    // Conjugating again returns -u up to a constant. Dart k of the double dual is the reverse of e.
    Conjugate back = harmonic_conjugate(dn, cj.dual.embedded, cj.v);
    const PartialGraph& gg = back.dual.network.graph;
    for (EdgeKey k : eg.graph.edge_keys()) {
      auto [a, b] = eg.graph.endpoints(k);
      CHECK(back.v(gg.tail(dart_of(k))) - back.v(gg.head(dart_of(k))) == u(a) - u(b));
    }
    ++nontrivial;
  }
  CHECK(nontrivial > 10);

  EmbeddedPartialGraph fan = wheel(4, true);
  VertexFunction bump{Ring::Q(), {}};
  for (VertexId v : fan.graph.vertices()) bump.values[v] = 0;
  bump.values[1] = 1;
  CHECK_THROWS_AS(harmonic_conjugate(std_network(fan.graph), fan, bump), PreconditionError);
}
