#include "upsilon/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "upsilon/continuation.hpp"
#include "upsilon/families.hpp"

namespace upsilon {

namespace {

struct Checker {
  std::size_t count = 0;
  std::string failure;
  void operator()(bool ok, const std::string& what) {
    ++count;
    if (!ok && failure.empty()) failure = what;
  }
};

ModuleDecomposition dec(std::size_t free_rank, const std::vector<Int>& orders) {
  return ModuleDecomposition::from_cyclic_orders(free_rank, orders);
}

Int fibonacci(std::size_t n) {
  Int a = 0, b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Int c = a + b;
    a = b;
    b = c;
  }
  return a;
}

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int pow4(std::size_t j) {
  Int r = 1;
  for (std::size_t i = 0; i < j; ++i) r *= 4;
  return r;
}

std::string str(std::size_t v) { return std::to_string(v); }

Rat random_nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 6), den(1, 5), sign(0, 1);
  Rat q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
  q.canonicalize();
  return q;
}

Rat random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  Rat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Connected graph with random multi-edges and boundary flags.
PartialGraph random_graph(std::mt19937_64& rng, std::size_t min_v, std::size_t max_v, double p_boundary) {
  std::size_t nv = std::uniform_int_distribution<std::size_t>(min_v, max_v)(rng);
  std::bernoulli_distribution bd(p_boundary);
  PartialGraph g;
  for (std::size_t i = 0; i < nv; ++i) g.add_vertex(bd(rng));
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  for (std::size_t i = 1; i < nv; ++i) g.add_edge(static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)), static_cast<VertexId>(i));
  std::size_t extra = std::uniform_int_distribution<std::size_t>(0, nv)(rng);
  for (std::size_t i = 0; i < extra; ++i) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a != b) g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return g;
}

// Connected simple graphs on at most max_v vertices with at most max_e edges, each
// with every boundary subset, one representative per isomorphism class.
std::vector<PartialGraph> enumerate_boundary_graphs(std::size_t max_v, std::size_t max_e) {
  std::vector<PartialGraph> out;
  for (std::size_t nv = 1; nv <= max_v; ++nv) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = a + 1; b < nv; ++b) pairs.emplace_back(a, b);
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(nv);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
    for (std::size_t i = 0; i < pairs.size(); ++i) pair_index[pairs[i]] = i;
    auto relabel = [&](std::size_t emask, std::size_t bmask, const std::vector<std::size_t>& q) {
      std::size_t e = 0, b = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (emask >> i & 1) {
          std::size_t x = q[pairs[i].first], y = q[pairs[i].second];
          e |= std::size_t{1} << pair_index.at({std::min(x, y), std::max(x, y)});
        }
      for (std::size_t v = 0; v < nv; ++v)
        if (bmask >> v & 1) b |= std::size_t{1} << q[v];
      return std::make_pair(e, b);
    };
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t emask = 0; emask < (std::size_t{1} << pairs.size()); ++emask) {
      if (static_cast<std::size_t>(__builtin_popcountll(emask)) > max_e) continue;
      PartialGraph g;
      for (std::size_t v = 0; v < nv; ++v) g.add_vertex(false);
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (emask >> i & 1) g.add_edge(static_cast<VertexId>(pairs[i].first), static_cast<VertexId>(pairs[i].second));
      if (!is_connected(g)) continue;
      for (std::size_t bmask = 0; bmask < (std::size_t{1} << nv); ++bmask) {
        std::pair<std::size_t, std::size_t> canon{~std::size_t{0}, ~std::size_t{0}};
        for (const auto& q : perms) canon = std::min(canon, relabel(emask, bmask, q));
        if (!seen.insert(canon).second) continue;
        PartialGraph h = g;
        for (std::size_t v = 0; v < nv; ++v) h.set_boundary(static_cast<VertexId>(v), (bmask >> v & 1) != 0);
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- criteria

void complete_bipartite_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t m = 2; m <= 6; ++m)
    for (std::size_t n = 2; n <= 6; ++n) {
      auto got = upsilon(std_network(complete_bipartite(m, n))).decomposition;
      auto want = dec(m, std::vector<Int>(n - 1, Int(static_cast<long>(m))));
      c(got == want, "K_{" + str(m) + "," + str(n) + "}: got " + got.to_string() + ", want " + want.to_string());
    }
}

void complete_graph_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t n = 3; n <= 8; ++n) {
    PartialGraph g = complete_graph(n);
    auto got = critical_group(g);
    auto want = dec(0, std::vector<Int>(n - 2, Int(static_cast<long>(n))));
    c(got == want, "Crit(K_" + str(n) + "): got " + got.to_string() + ", want " + want.to_string());
    std::set<VertexId> s;
    for (std::size_t i = 0; i + 1 < n; ++i) s.insert(static_cast<VertexId>(i));
    std::size_t bound = invariant_factor_bound(g, s);
    c(bound == n - 2 && got.invariant_factors.size() == bound,
      "K_" + str(n) + ": bound " + str(bound) + " vs " + str(got.invariant_factors.size()) + " invariant factors");
  }
}

void wheel_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t n = 3; n <= 12; ++n) {
    auto got = critical_group(wheel(n, false).graph);
    ModuleDecomposition want;
    if (n % 2 == 1) {
      Int l = fibonacci(n - 1) + fibonacci(n + 1);
      want = dec(0, {l, l});
    } else {
      want = dec(0, {fibonacci(n), 5 * fibonacci(n)});
    }
    c(got == want, "Crit(W_" + str(n) + "): got " + got.to_string() + ", want " + want.to_string());
  }
}

bool brute_force_feasible(const Network& n) { return n.graph.interior_vertices().size() <= 4; }

void clf_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t m = 3; m <= 12; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<Int> orders;
      if (m % 2 == 1) {
        orders.assign(n, 2);
      } else if (m % 4 == 2) {
        orders.assign(2 * n, 2);
      } else {
        for (int rep = 0; rep < 2; ++rep)
          for (std::size_t j = 1; j <= n; ++j) orders.push_back(gcd_int(pow4(j), Int(static_cast<long>(2 * m))));
      }
      auto got = U0_QmodZ(std_network(clf(m, n)));
      auto want = dec(0, orders);
      c(got == want, "CLF(" + str(m) + "," + str(n) + "): got " + got.to_string() + ", want " + want.to_string());
    }
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<Int> orders;
      if (m % 2 == 1) {
        orders.assign(n, 2);
      } else {
        // Summands U_1(2m, ceil(n/2)) + U_2(2m, floor(n/2)) of the CLF form at 2m.
        for (std::size_t j = 1; j <= (n + 1) / 2; ++j) orders.push_back(gcd_int(pow4(j), Int(static_cast<long>(4 * m))));
        for (std::size_t j = 1; j <= n / 2; ++j) orders.push_back(gcd_int(pow4(j), Int(static_cast<long>(4 * m))));
      }
      Network prime = std_network(clf_prime(m, n));
      auto got = U0_QmodZ(prime);
      auto want = dec(0, orders);
      c(got == want, "CLF'(" + str(m) + "," + str(n) + "): got " + got.to_string() + ", want " + want.to_string());
      if (n % 2 == 0)
        c(got == U0_QmodZ(std_network(clf(2 * m, n / 2))), "CLF'(" + str(m) + "," + str(n) + ") differs from CLF(2m, n/2)");
      if (brute_force_feasible(prime)) {
        for (long p : {4L, 8L}) {
          Int count = U0_mod_n_brute_force(prime, p);
          c(count == U0_mod_n(prime, p).torsion_order(), "CLF'(" + str(m) + "," + str(n) + "): brute-force count mod " +
                                                              std::to_string(p));
        }
      }
    }
}

void worked_example_criterion(Checker& c, std::mt19937_64&) {
  Network n = std_network(samples::worked_example());
  U0Matrix a = u0_matrix_A(n, samples::worked_example_s());
  RatMatrix want(3, 2);
  const long entries[3][2] = {{12, -9}, {-15, 15}, {3, -6}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) want(i, j) = entries[i][j];
  c(a.A == want, "matrix A differs from the worked example");
  c(a.row_vertices == std::vector<VertexId>{0, 1, 2}, "rows of A are not v, w, z");
  auto diag = snf(to_integer(a.A)).diagonal();
  c(diag == std::vector<Int>{3, 15}, "Smith form of A is not diag(3, 15)");
  auto u0 = u0_via_continuation(n, samples::worked_example_s());
  c(u0 == dec(0, {3, 15}), "U0 via A is " + u0.to_string());
  c(U0_QmodZ(n) == dec(0, {3, 15}), "direct U0 is " + U0_QmodZ(n).to_string());

  // Generators in the order v, w, z, x, y.
  struct Gen {
    long modulus;
    std::vector<long> phi, values;
  };
  const std::vector<Gen> gens = {{3, {1, 0}, {0, -1, 0, 1, 0}}, {3, {0, 1}, {-1, -1, 0, 0, 1}}, {5, {2, 1}, {0, 2, 0, 2, 1}}};
  for (const auto& g : gens) {
    Ring ring = Ring::mod(g.modulus);
    VertexFunction u = u0_function(a, {Rat(g.phi[0]), Rat(g.phi[1])}, ring);
    VertexFunction expect{ring, {}};
    for (std::size_t v = 0; v < 5; ++v) expect.values[static_cast<VertexId>(v)] = ring.normalize(Rat(g.values[v]));
    c(u == expect, "generator mod " + std::to_string(g.modulus) + " differs from the expected function");
    c(is_in_U0(n, u), "generator mod " + std::to_string(g.modulus) + " is not in U0");
  }
  c(U0_mod_n(n, 3) == dec(0, {3, 3}), "U0 mod 3 is not (Z/3)^2");
  c(U0_mod_n(n, 5) == dec(0, {5}), "U0 mod 5 is not Z/5");
}

void cube_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto crit = critical_group(cube(n));
    std::size_t want = (std::size_t{1} << (n - 1)) - 1;
    c(crit.invariant_factors.size() == want,
      "Crit(Q_" + str(n) + ") = " + crit.to_string() + " has " + str(crit.invariant_factors.size()) + " invariant factors");
    c(invariant_factor_bound(cube(n), cube_facet(n)) == want, "facet bound for Q_" + str(n));
  }
}

void layerability_criterion(Checker& c, std::mt19937_64& rng) {
  auto graphs = enumerate_boundary_graphs(5, 7);
  std::size_t layerable = 0;
  for (const auto& g : graphs) {
    bool lay = is_layerable(g);
    bool witness = false;
    try {
      DegenerateWitness w = degenerate_weights_general(reduce_to_flower(g).flower);
      DegenerateWitness wg = degenerate_network_on(g);
      bool nonzero = std::any_of(wg.u.values.begin(), wg.u.values.end(), [](const auto& p) { return p.second != 0; });
      witness = is_in_U0(w.network, w.u) && is_in_U0(wg.network, wg.u) && nonzero && !is_nondegenerate(wg.network);
    } catch (const PreconditionError&) {
      witness = false;
    }
    c(lay != witness, "layerable and witness disagree on a graph with " + str(g.num_vertices()) + " vertices and " +
                          str(g.num_edges()) + " edges");
    if (!lay) continue;
    ++layerable;
    for (int t = 0; t < 20; ++t) {
      Network n = constant_network(g, Ring::Q(), 1, 0);
      for (auto& [k, w] : n.w) w = random_nonzero_rational(rng);
      for (auto& [v, d] : n.d) d = random_rational(rng);
      c(is_nondegenerate(n), "random network on a layerable graph is degenerate");
    }
  }
  c(layerable > 0 && layerable < graphs.size(), "enumeration is one-sided");
}

void confluence_criterion(Checker& c, std::mt19937_64& rng) {
  std::size_t nonempty = 0;
  for (int i = 0; i < 50; ++i) {
    PartialGraph g = random_graph(rng, 3, 9, 0.4);
    std::mt19937_64 r1(rng()), r2(rng());
    PartialGraph f1 = reduce_to_flower(g, &r1).flower, f2 = reduce_to_flower(g, &r2).flower;
    c(f1 == f2, "two strip orders gave different flowers on random graph " + std::to_string(i));
    c(f1 == reduce_to_flower(g).flower, "random and greedy strip orders disagree on random graph " + std::to_string(i));
    c(is_flower(f1), "result is not a flower");
    if (!f1.empty()) ++nonempty;
  }
  c(nonempty > 0, "no random graph had a nonempty flower");
}

void duality_criterion(Checker& c, std::mt19937_64& rng) {
  for (std::size_t n = 3; n <= 10; ++n) {
    EmbeddedPartialGraph w = wheel(n, true);
    DualityReport r = duality_report(std_network(w.graph), w);
    c(r.agree(), "W_" + str(n) + ": " + r.primal.to_string() + " vs dual " + r.dual.to_string());
    c(double_dual_check(std_network(w.graph), w), "double dual of W_" + str(n));
  }
  for (int i = 0; i < 25; ++i) {
    EmbeddedPartialGraph eg = random_circular_planar(rng, 8);
    Network n = std_network(eg.graph);
    std::bernoulli_distribution sign(0.5);
    for (auto& [k, w] : n.w) w = sign(rng) ? 1 : -1;
    DualityReport r = duality_report(n, eg);
    c(r.agree(), "random planar network " + std::to_string(i) + ": " + r.primal.to_string() + " vs " + r.dual.to_string());
    c(double_dual_check(n, eg), "double dual of random planar network " + std::to_string(i));
  }
  EmbeddedPartialGraph w5 = wheel(5, true);
  DualNetwork d = dual(std_network(w5.graph), w5);
  c(are_isomorphic(d.network.graph, w5.graph, false), "dual of W_5 is not isomorphic to W_5");
}

void symplectic_criterion(Checker& c, std::mt19937_64& rng) {
  auto random_transform = [&](std::size_t m) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<std::size_t> idx(0, m - 1);
    switch (m == 1 ? kind(rng) % 2 : kind(rng)) {
      case 0: {
        std::vector<Rat> d(m);
        for (auto& x : d) x = random_rational(rng);
        return initial_transform(d);
      }
      case 1:
        return spike_transform(m, idx(rng), random_nonzero_rational(rng), random_rational(rng));
      default: {
        std::size_t i = idx(rng), j = idx(rng);
        while (j == i) j = idx(rng);
        return edge_transform(m, i, j, random_nonzero_rational(rng));
      }
    }
  };
  std::uniform_int_distribution<std::size_t> size(1, 6), len(2, 8);
  for (int t = 0; t < 200; ++t) {
    auto tr = random_transform(size(rng));
    c(is_symplectic(tr.matrix), "single transform is not symplectic");
  }
  for (int t = 0; t < 200; ++t) {
    std::size_t m = size(rng);
    RatMatrix p = RatMatrix::identity(2 * m);
    for (std::size_t k = len(rng); k > 0; --k) p = random_transform(m).matrix * p;
    c(is_symplectic(p), "product of transforms is not symplectic");
  }
}

void cross_oracle_criterion(Checker& c, std::mt19937_64& rng) {
  int done = 0, attempts = 0;
  std::size_t nontrivial = 0;
  while (done < 30 && attempts < 2000) {
    ++attempts;
    PartialGraph g = random_graph(rng, 3, 8, 0.35);
    Network n = std_network(g);
    std::bernoulli_distribution sign(0.5);
    std::uniform_int_distribution<int> off(-2, 2);
    for (auto& [k, w] : n.w) w = sign(rng) ? 1 : -1;
    for (auto& [v, d] : n.d) d = off(rng);
    if (!is_nondegenerate(n)) continue;
    ++done;
    TorsionCrosscheck t = torsion_crosscheck_report(n);
    ModuleDecomposition via_a = u0_via_continuation(n, find_layering_set(g));
    c(t.u0_torsion == t.transpose_cokernel && t.u0_torsion == via_a && t.u0_torsion == t.cokernel_torsion,
      "random network " + std::to_string(done) + ": kernel " + t.u0_torsion.to_string() + ", transpose " +
          t.transpose_cokernel.to_string() + ", matrix A " + via_a.to_string());
    if (!t.u0_torsion.is_trivial()) ++nontrivial;
  }
  c(done == 30, "could not draw 30 non-degenerate networks");
  c(nontrivial > 0, "every drawn network had trivial U0");
}

void spectral_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t n = 3; n <= 12; ++n) {
    Network net = constant_network(cycle(n), Ring::Z(), -1, 2);
    RatMatrix a = laplacian_matrix(net);
    auto parts = squarefree_decomposition(to_rational(laplacian_charpoly(net)));
    RatPoly pm2 = {Rat(-4), Rat(0), Rat(1)};  // (z - 2)(z + 2)
    c(!parts.empty() && poly_divides(parts[0], pm2), "C_" + str(n) + ": a simple eigenvalue other than +-2");
    for (std::size_t i = 2; i < parts.size(); ++i)
      c(parts[i].size() <= 1, "C_" + str(n) + ": an eigenvalue of multiplicity above 2");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::size_t deg = parts[i].empty() ? 0 : parts[i].size() - 1;
      std::size_t nullity = a.rows() - rank_over_Q(poly_eval(parts[i], a));
      c(nullity == (i + 1) * deg, "C_" + str(n) + ": geometric multiplicity differs from algebraic");
    }
    c(eigen_multiplicity(net, 2) == 1, "C_" + str(n) + ": eigenvalue 2 is not simple");
    c(eigen_multiplicity(net, -2) == (n % 2 == 0 ? 1u : 0u), "C_" + str(n) + ": multiplicity of -2");
  }
  for (const PartialGraph& base : {cycle(3), complete_graph(4)}) {
    DoubleCover dc = bipartite_double_cover(base);
    c(is_covering_map(dc.projection), "double cover projection is not a covering");
    c(charpoly_divisibility_check(dc.projection, std_network(dc.graph), std_network(base)),
      "charpoly of the base does not divide that of its double cover");
  }
}

void symmetry_criterion(Checker& c, std::mt19937_64& rng) {
  const std::vector<std::pair<std::size_t, std::size_t>> cases = {{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}};
  for (const auto& [m, n] : cases) {
    std::string name = "CLF(" + str(2 * m) + "," + str(n) + ") -> CLF(" + str(m) + "," + str(n) + ")";
    Morphism f = clf_rotation_quotient(2, m, n);
    c(is_covering_map(f), name + " is not a covering");
    Network n1 = std_network(f.source), n2 = std_network(f.target);
    for (long p : {3L, 2L}) {
      Int big = U0_mod_n(n1, p).torsion_order(), small = U0_mod_n(n2, p).torsion_order();
      c((big - small) % 2 == 0, name + ": |U0| mod 2 differs with Z/" + std::to_string(p));
      if (f.target.interior_vertices().size() <= 8)
        c(small == U0_mod_n_brute_force(n2, p), name + ": brute-force count differs with Z/" + std::to_string(p));
    }
    for (long p : {3L, 8L}) {
      Ring ring = Ring::mod(p);
      auto gens = U0_mod_n_generators(n2, p);
      std::vector<VertexFunction> samples;
      for (const auto& [order, g] : gens) samples.push_back(g);
      if (!gens.empty()) {
        VertexFunction mix = zero_function(f.target, ring);
        std::uniform_int_distribution<long> coef(0, p - 1);
        for (const auto& [order, g] : gens) {
          long a = coef(rng);
          for (auto& [v, x] : mix.values) x = ring.normalize(x + a * g(v));
        }
        samples.push_back(mix);
      }
      for (const auto& u : samples) {
        VertexFunction up = pullback_harmonic(f, n1, n2, u);
        c(is_in_U0(n1, up), name + ": pullback leaves U0");
        VertexFunction back = pushforward_U0(f, n1, n2, up);
        VertexFunction twice = u;
        for (auto& [v, x] : twice.values) x = ring.normalize(2 * x);
        c(back == twice, name + ": pushforward of pullback is not 2 u over Z/" + std::to_string(p));
      }
      if (p == 8) c(!gens.empty(), name + ": U0 over Z/8 is trivial");
    }
  }
}

void bipartite_obstruction_criterion(Checker& c, std::mt19937_64&) {
  for (std::size_t m = 2; m <= 5; ++m)
    for (std::size_t n = m; n <= 5; ++n) {
      ReducibilityResult r = is_completely_reducible(complete_bipartite(m, n));
      std::string name = "K_{" + str(m) + "," + str(n) + "}";
      c(!r.completely_reducible, name + " reported completely reducible");
      c(!r.irreducible_leaves.empty(), name + " has no irreducible witness");
      for (const auto& leaf : r.irreducible_leaves) c(is_irreducible(leaf), name + ": witness is not irreducible");
      c(replay(r.trace) == complete_bipartite(m, n), name + ": trace does not replay to the graph");
    }
}

struct Criterion {
  int id;
  Suite suite;
  const char* title;
  void (*run)(Checker&, std::mt19937_64&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, Suite::Paper, "Complete bipartite fundamental modules", complete_bipartite_criterion},
      {2, Suite::Paper, "Critical groups of complete graphs and the invariant-factor bound", complete_graph_criterion},
      {3, Suite::Paper, "Critical groups of wheels", wheel_criterion},
      {4, Suite::Paper, "Chain-link fence U0 closed forms", clf_criterion},
      {5, Suite::Paper, "Worked harmonic continuation example", worked_example_criterion},
      {6, Suite::Paper, "Hypercube invariant factor count", cube_criterion},
      {7, Suite::Property, "Layerability versus degenerate witnesses", layerability_criterion},
      {8, Suite::Property, "Flower confluence", confluence_criterion},
      {9, Suite::Paper, "Planar duality of reduced modules", duality_criterion},
      {10, Suite::Property, "Boundary data transforms are symplectic", symplectic_criterion},
      {11, Suite::Property, "U0 three ways", cross_oracle_criterion},
      {12, Suite::Paper, "Cycle spectra and double-cover divisibility", spectral_criterion},
      {13, Suite::Paper, "Rotation quotient counting and transfer", symmetry_criterion},
      {14, Suite::Paper, "Complete bipartite graphs are not completely reducible", bipartite_obstruction_criterion},
  };
  return all;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(Suite suite, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (const auto& cr : criteria()) {
    if (suite != Suite::All && cr.suite != suite) continue;
    CriterionResult r;
    r.id = cr.id;
    r.title = cr.title;
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(cr.id));
    Checker c;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c, rng);
      r.passed = c.failure.empty() && c.count > 0;
      r.detail = c.failure.empty() ? std::to_string(c.count) + " checks" : c.failure;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : results) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
    os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << "  (" << r.detail
       << ", " << buf << ")\n";
    passed += r.passed;
  }
  os << passed << "/" << results.size() << " criteria passed\n";
  return os.str();
}

}  // namespace upsilon
