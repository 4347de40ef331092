#include <catch_amalgamated.hpp>

#include <random>

#include "upsilon/continuation.hpp"
#include "upsilon/families.hpp"

using namespace upsilon;

namespace {

RatMatrix J(std::size_t m) {
  RatMatrix j(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    j(i, m + i) = -1;
    j(m + i, i) = 1;
  }
  return j;
}

Rat random_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  int p = 0;
  while (p == 0) p = num(rng);
  Rat q(p, den(rng));
  q.canonicalize();
  return q;
}

// Random connected graph with at least one boundary vertex and every edge weight +-1.
Network random_layerable(std::mt19937_64& rng) {
  for (;;) {
    std::size_t nv = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
    std::bernoulli_distribution bd(0.4), sign(0.5);
    PartialGraph g;
    for (std::size_t i = 0; i < nv; ++i) g.add_vertex(i == 0 || bd(rng));
    for (std::size_t i = 1; i < nv; ++i)
      g.add_edge(static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)), static_cast<VertexId>(i));
    std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
    for (int e = 0; e < 3; ++e) {
      std::size_t a = pick(rng), b = pick(rng);
      if (a != b) g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
    if (!is_layerable(g)) continue;
    Network n = std_network(g);
    std::uniform_int_distribution<int> off(-2, 2);
    for (auto& [k, w] : n.w) w = sign(rng) ? 1 : -1;
    for (auto& [v, d] : n.d) d = off(rng);
    return n;
  }
}

}  // namespace

TEST_CASE("boundary transforms") {
  BoundaryTransform s = spike_transform(2, 1, 2, 3);
  RatMatrix want = RatMatrix::identity(4);
  want(1, 3) = Rat(1, 2);
  want(3, 1) = 3;
  want(3, 3) = Rat(5, 2);
  CHECK(s.kind == BoundaryTransform::Kind::Spike);
  CHECK(s.matrix == want);

  BoundaryTransform e = edge_transform(3, 0, 2, -1);
  RatMatrix we = RatMatrix::identity(6);
  we(3, 0) = -1;
  we(5, 2) = -1;
  we(3, 2) = 1;
  we(5, 0) = 1;
  CHECK(e.matrix == we);

  BoundaryTransform i = initial_transform({Rat(1), Rat(-2)});
  RatMatrix wi = RatMatrix::identity(4);
  wi(2, 0) = 1;
  wi(3, 1) = -2;
  CHECK(i.matrix == wi);

  CHECK_THROWS_AS(spike_transform(2, 0, 0, 1), PreconditionError);
  CHECK_THROWS_AS(spike_transform(2, 2, 1, 1), PreconditionError);
  CHECK_THROWS_AS(edge_transform(2, 1, 1, 1), PreconditionError);
}

TEST_CASE("transforms are symplectic") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::size_t> msize(1, 4);
  std::uniform_int_distribution<int> off(-3, 3);
  for (int t = 0; t < 50; ++t) {
    std::size_t m = msize(rng) + 1;
    std::uniform_int_distribution<std::size_t> idx(0, m - 1);
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) b = (a + 1) % m;
    RatMatrix sp = spike_transform(m, a, random_nonzero(rng), Rat(off(rng))).matrix;
    RatMatrix ed = edge_transform(m, a, b, random_nonzero(rng)).matrix;
    std::vector<Rat> d(m);
    for (auto& x : d) x = off(rng);
    RatMatrix in = initial_transform(d).matrix;
    CHECK(sp.transpose() * J(m) * sp == J(m));
    CHECK(is_symplectic(sp));
    CHECK(is_symplectic(ed));
    CHECK(is_symplectic(in));
    CHECK(is_symplectic(sp * ed * in));
  }
  RatMatrix bad = RatMatrix::identity(4);
  bad(0, 0) = 2;
  CHECK_FALSE(is_symplectic(bad));
}

TEST_CASE("continuation plans") {
  for (int t = 0; t < 20; ++t) {
    std::mt19937_64 rng(620 + t);
    Network n = random_layerable(rng);
    ContinuationPlan p = make_plan(n);
    REQUIRE(p.transforms.size() == p.filtration.ops.size() + 1);
    CHECK(p.transforms[0].kind == BoundaryTransform::Kind::Initial);
    for (std::size_t k = 1; k < p.transforms.size(); ++k)
      CHECK((p.transforms[k].kind == BoundaryTransform::Kind::Spike) ==
            (p.filtration.ops[k - 1].kind == OpKind::ContractBoundarySpike));
    CHECK(is_symplectic(plan_product(p)));
  }
  CHECK_THROWS_AS(make_plan(std_network(complete_bipartite(2, 2))), PreconditionError);
}

TEST_CASE("harmonic continuation") {
  // A boundary vertex at the end of an interior path: continuation is constant.
  PartialGraph path;
  for (int i = 0; i < 5; ++i) path.add_vertex(i == 0);
  for (int i = 1; i < 5; ++i) path.add_edge(i - 1, i);
  ContinuationPlan pp = make_plan(std_network(path));
  VertexFunction c = continue_harmonic(pp, {Rat(7)}, Ring::Q());
  for (VertexId v : path.vertices()) CHECK(c(v) == 7);
  VertexFunction zero = continue_harmonic(pp, {Rat(0)}, Ring::mod(5));
  for (VertexId v : path.vertices()) CHECK(zero(v) == 0);

  std::mt19937_64 rng(63);
  for (int t = 0; t < 40; ++t) {
    Network n = random_layerable(rng);
    ContinuationPlan p = make_plan(n);
    const auto& l0 = p.filtration.labellings[0];
    std::vector<Rat> phi(l0.size());
    for (auto& x : phi) x = random_nonzero(rng);
    VertexFunction u = continue_harmonic(p, phi, Ring::Q());
    CHECK(is_harmonic(n, u));
    for (std::size_t i = 0; i < l0.size(); ++i) CHECK(u(l0[i]) == phi[i]);

    std::vector<Rat> ints(l0.size());
    for (auto& x : ints) x = std::uniform_int_distribution<int>(0, 6)(rng);
    VertexFunction v = continue_harmonic(p, ints, Ring::mod(7));
    CHECK(is_harmonic(n, v));
  }
  CHECK_THROWS_AS(continue_harmonic(pp, {Rat(1), Rat(2)}, Ring::Q()), PreconditionError);
}

TEST_CASE("matrix A for the worked example") {
  Network n = std_network(samples::worked_example());
  U0Matrix a = u0_matrix_A(n, samples::worked_example_s());
  CHECK(a.s_order == std::vector<VertexId>{3, 4});
  CHECK(a.A.rows() == 3);
  CHECK(a.A.cols() == 2);
  CHECK(is_integral(a.A));
  CHECK(cokernel(to_integer(a.A)) == ModuleDecomposition{1, {3, 15}});
  CHECK(u0_via_continuation(n, samples::worked_example_s()) == U0_QmodZ(n));

  // Columns of A record Lu on the boundary of the continuation of a unit vector on S.
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<Rat> phi(2, Rat(0));
    phi[j] = 1;
    VertexFunction u = u0_function(a, phi, Ring::Q());
    VertexFunction lu = apply_L(n, u);
    for (std::size_t i = 0; i < a.row_vertices.size(); ++i) CHECK(lu(a.row_vertices[i]) == a.A(i, j));
    for (VertexId v : n.graph.boundary_vertices()) CHECK(u(v) == 0);
  }
  CHECK_THROWS_AS(u0_function(a, {Rat(1)}, Ring::Q()), PreconditionError);
}

TEST_CASE("U0 via continuation agrees with the kernel") {
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t k = 1; k <= 2; ++k) {
      Network n = std_network(clf(m, k));
      INFO("CLF(" << m << "," << k << ")");
      CHECK(u0_via_continuation(n, find_layering_set(n.graph)) == U0_QmodZ(n));
      auto in = n.graph.interior_vertices();
      CHECK(u0_via_continuation(n, {in.begin(), in.end()}) == U0_QmodZ(n));
    }
  Network lay = std_network(samples::standard_form_example());
  CHECK(find_layering_set(lay.graph).empty());
  CHECK(u0_via_continuation(lay, {}).is_trivial());
  CHECK_THROWS_AS(u0_via_continuation(std_network(complete_bipartite(2, 2)), {}), PreconditionError);
}

TEST_CASE("layering sets") {
  for (const PartialGraph& g : {complete_graph(5), cube(3), clf(3, 2), complete_bipartite(3, 3), wheel(6, false).graph}) {
    auto s = find_layering_set(g);
    CHECK(is_layerable(make_boundary(g, s)));
    for (VertexId v : s) CHECK(g.is_interior(v));
  }
}

TEST_CASE("invariant factor bounds") {
  for (std::size_t n = 3; n <= 6; ++n) {
    std::set<VertexId> s;
    for (std::size_t i = 0; i + 1 < n; ++i) s.insert(static_cast<VertexId>(i));
    std::size_t bound = invariant_factor_bound(complete_graph(n), s);
    CHECK(bound == n - 2);
    CHECK(critical_group(complete_graph(n)).invariant_factors.size() == bound);
  }
  for (std::size_t n = 2; n <= 4; ++n)
    CHECK(critical_group(cube(n)).invariant_factors.size() <= invariant_factor_bound(cube(n), cube_facet(n)));
  CHECK_THROWS_AS(invariant_factor_bound(complete_graph(4), {0}), PreconditionError);
  CHECK_THROWS_AS(invariant_factor_bound(complete_graph(4, {0}), {1, 2, 3}), PreconditionError);
  CHECK_THROWS_AS(invariant_factor_bound(complete_graph(4), {}), PreconditionError);
}

TEST_CASE("eigenvalue multiplicity bounds") {
  Network c6 = std_network(cycle(6));
  for (const Rat& lambda : {Rat(0), Rat(1), Rat(3), Rat(4)}) CHECK(multiplicity_bound_check(c6, {0, 1}, lambda));
  CHECK(eigen_multiplicity(c6, 1) == 2);
  Network k5 = std_network(complete_graph(5));
  CHECK(eigen_multiplicity(k5, 5) == 4);
  CHECK(multiplicity_bound_check(k5, {0, 1, 2, 3}, 5));
  CHECK_THROWS_AS(multiplicity_bound_check(c6, {0}, 1), PreconditionError);
}
