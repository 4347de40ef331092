#include <catch_amalgamated.hpp>

#include <random>

#include "upsilon/exact_algebra.hpp"

using namespace upsilon;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = e(rng);
  return a;
}

// Leibniz expansion; test sizes stay tiny.
Int leibniz_det(const IntMatrix& a) {
  std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Int total = 0;
  do {
    Int term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    total += inv % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Determinantal divisors: gcd of all k x k minors.
std::vector<Int> determinantal_divisors(const IntMatrix& a) {
  std::vector<Int> out;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = a(r[i], c[j]);
        Int d = leibniz_det(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    out.push_back(g);
  }
  return out;
}

std::size_t brute_force_kernel_count(const IntMatrix& a, long n) {
  std::size_t cols = a.cols(), count = 0, total = 1;
  for (std::size_t j = 0; j < cols; ++j) total *= static_cast<std::size_t>(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<long> x(cols);
    std::size_t c = code;
    for (std::size_t j = 0; j < cols; ++j, c /= static_cast<std::size_t>(n)) x[j] = static_cast<long>(c % n);
    bool ok = true;
    for (std::size_t i = 0; i < a.rows() && ok; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += a(i, j) * x[j];
      ok = s % n == 0;
    }
    count += ok;
  }
  return count;
}

IntMatrix paper_matrix() { return IntMatrix{{12, -9}, {-15, 15}, {3, -6}}; }

}  // namespace

TEST_CASE("residues stay canonical") {
  Residue a(-1, 5), b(7, 5);
  CHECK(a.value() == 4);
  CHECK((a + b).value() == 1);
  CHECK((a * b).value() == 3);
  CHECK(a.inverse().value() == 4);
  CHECK_THROWS_AS(Residue(2, 4).inverse(), PreconditionError);
  CHECK_THROWS_AS(a + Residue(1, 7), PreconditionError);
  CHECK(reduce_mod(Rat(1, 2), 5) == 3);
  CHECK_THROWS_AS(reduce_mod(Rat(1, 2), 4), PreconditionError);
}

TEST_CASE("snf examples") {
  auto id = snf(IntMatrix::identity(2));
  CHECK(id.diagonal() == std::vector<Int>{1, 1});
  CHECK(id.rank == 2);

  auto p = snf(paper_matrix());
  CHECK(p.diagonal() == std::vector<Int>{3, 15});
  CHECK(p.S(2, 0) == 0);
  CHECK(p.S(2, 1) == 0);

  auto r1 = snf(IntMatrix{{2, 4}, {4, 8}});
  CHECK(r1.rank == 1);
  CHECK(r1.S(0, 0) == 2);
  CHECK(r1.S(1, 1) == 0);
}

TEST_CASE("snf of random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::size_t c = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    IntMatrix a = random_matrix(rng, r, c);
    if (t % 5 == 0 && r > 1)  // force rank deficiency now and then
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = 2 * a(0, j);
    SnfResult s = snf(a);
    REQUIRE(s.U * a * s.V == s.S);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    auto d = s.diagonal();
    CHECK(d.size() == std::min(r, c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j || i >= s.rank) CHECK(s.S(i, j) == 0);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK((i < s.rank) == (d[i] > 0));
    for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(d[i + 1] % d[i] == 0);
    CHECK(s.rank == rank_over_Q(a));
  }
}

TEST_CASE("snf diagonal matches determinantal divisors") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::size_t c = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    IntMatrix a = random_matrix(rng, r, c, -6, 6);
    auto dd = determinantal_divisors(a);
    auto diag = snf(a).diagonal();
    Int prefix = 1;
    for (std::size_t k = 0; k < dd.size(); ++k) {
      if (k < diag.size()) {
        prefix *= diag[k];
        CHECK(prefix == dd[k]);
      } else {
        CHECK(dd[k] == 0);
      }
    }
  }
}

TEST_CASE("cokernel examples and unimodular invariance") {
  CHECK(cokernel(IntMatrix(3, 2)) == ModuleDecomposition{3, {}});
  CHECK(cokernel(paper_matrix()) == ModuleDecomposition{1, {3, 15}});
  CHECK(cokernel(IntMatrix{{1, 0}, {0, 6}}) == ModuleDecomposition{0, {6}});
  CHECK(cokernel(paper_matrix()).to_string() == "Z + Z/3 + Z/15");
  CHECK(ModuleDecomposition{}.to_string() == "0");

  std::mt19937_64 rng(13);
  auto unimodular = [&](std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> k(-3, 3);
    for (int s = 0; s < 12 && n > 1; ++s) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j) continue;
      int f = k(rng);
      for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
    }
    return u;
  };
  for (int t = 0; t < 40; ++t) {
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::size_t c = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    IntMatrix a = random_matrix(rng, r, c);
    CHECK(cokernel(unimodular(r) * a * unimodular(c)) == cokernel(a));
  }
}

TEST_CASE("from_cyclic_orders normalizes") {
  auto m = ModuleDecomposition::from_cyclic_orders(1, {2, 3, 1, 0, 4});
  CHECK(m.free_rank == 2);
  CHECK(m.invariant_factors == std::vector<Int>{2, 12});
  CHECK(m.torsion_order() == 24);
}

TEST_CASE("kernel mod n") {
  CHECK(kernel_mod_n(IntMatrix{{3, 0}, {0, 15}}, 3) == ModuleDecomposition{0, {3, 3}});
  CHECK(kernel_mod_n(IntMatrix::identity(2), 7).is_trivial());
  CHECK(kernel_mod_n(paper_matrix(), 5) == ModuleDecomposition{0, {5}});
  CHECK_THROWS_AS(kernel_mod_n(IntMatrix::identity(2), 1), PreconditionError);

  std::mt19937_64 rng(14);
  for (int t = 0; t < 120; ++t) {
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t c = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    long n = std::uniform_int_distribution<long>(2, 6)(rng);
    IntMatrix a = random_matrix(rng, r, c, -4, 4);
    CHECK(kernel_mod_n(a, n).torsion_order() == brute_force_kernel_count(a, n));
  }
}

TEST_CASE("kernel mod n generators span the kernel") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::size_t c = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    long n = std::uniform_int_distribution<long>(2, 6)(rng);
    IntMatrix a = random_matrix(rng, r, c, -4, 4);
    auto gens = kernel_mod_n_generators(a, n);
    Int product = 1;
    for (const auto& g : gens) {
      product *= g.order;
      for (std::size_t i = 0; i < r; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < c; ++j) s += a(i, j) * g.generator[j];
        CHECK(s % n == 0);
      }
      // additive order of the generator
      Int ord = 1;
      while (true) {
        bool zero = true;
        for (const auto& x : g.generator) zero = zero && (ord * x) % n == 0;
        if (zero) break;
        ++ord;
      }
      CHECK(ord == g.order);
    }
    CHECK(product == kernel_mod_n(a, n).torsion_order());
  }
}

TEST_CASE("kernel on Q/Z") {
  CHECK(kernel_QmodZ_torsion(IntMatrix::identity(3)).is_trivial());
  CHECK(kernel_QmodZ_torsion(IntMatrix{{3, 0}, {0, 15}, {0, 0}}) == ModuleDecomposition{0, {3, 15}});
  CHECK(kernel_QmodZ_torsion(IntMatrix{{2}}) == ModuleDecomposition{0, {2}});
  CHECK(kernel_QmodZ_torsion(paper_matrix()) == ModuleDecomposition{0, {3, 15}});
  CHECK_THROWS_AS(kernel_QmodZ_torsion(IntMatrix{{1, 2}, {2, 4}}), DivisibleKernelError);
}

TEST_CASE("rank over Q") {
  CHECK(rank_over_Q(IntMatrix(3, 4)) == 0);
  CHECK(rank_over_Q(IntMatrix::identity(5)) == 5);
  IntMatrix c4{{2, -1, 0, -1}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {-1, 0, -1, 2}};
  CHECK(rank_over_Q(c4) == 3);
  CHECK(rank_over_Q(RatMatrix{{Rat(1, 2), Rat(1, 3)}, {Rat(3, 2), Rat(1)}}) == 1);
}

TEST_CASE("determinant agrees with Leibniz") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    IntMatrix a = random_matrix(rng, n, n);
    CHECK(determinant(a) == leibniz_det(a));
    CHECK(determinant(to_rational(a)) == Rat(leibniz_det(a)));
  }
}

TEST_CASE("charpoly") {
  CHECK(charpoly(IntMatrix(2, 2)) == IntPoly{0, 0, 1});
  CHECK(charpoly(IntMatrix{{1, -1}, {-1, 1}}) == IntPoly{0, -2, 1});
  CHECK(charpoly(IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) == IntPoly{-2, -3, 0, 1});
  CHECK(poly_to_string(IntPoly{-2, -3, 0, 1}) == "z^3 - 3z - 2");
  CHECK_THROWS_AS(charpoly(IntMatrix(2, 3)), PreconditionError);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    IntMatrix a = random_matrix(rng, n, n, -3, 3);
    IntPoly p = charpoly(a);
    REQUIRE(p.size() == n + 1);
    CHECK(p.back() == 1);
    for (int lam = -4; lam <= 4; ++lam) {
      IntMatrix m = IntMatrix::identity(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? lam : 0) - a(i, j);
      Rat value = poly_eval(to_rational(p), Rat(lam));
      CHECK(value == Rat(leibniz_det(m)));
      CHECK((value == 0) == (rank_over_Q(m) < n));
    }
  }
}

TEST_CASE("polynomial helpers") {
  RatPoly a = {Rat(-1), Rat(0), Rat(1)};  // z^2 - 1
  RatPoly b = {Rat(1), Rat(1)};            // z + 1
  CHECK(poly_divides(b, a));
  CHECK_FALSE(poly_divides(a, b));
  CHECK(poly_gcd(a, poly_mul(b, b)) == b);
  CHECK(poly_scale_argument(a, 2) == RatPoly{Rat(-1), Rat(0), Rat(4)});
  // (z - 1)(z + 1)^2 (z - 2)^3
  RatPoly m1 = {Rat(-1), Rat(1)}, m2 = {Rat(-2), Rat(1)};
  RatPoly p = poly_mul(m1, poly_mul(poly_mul(b, b), poly_mul(m2, poly_mul(m2, m2))));
  auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == m1);
  CHECK(parts[1] == b);
  CHECK(parts[2] == m2);
  RatMatrix j{{Rat(2), Rat(1)}, {Rat(0), Rat(2)}};
  CHECK(poly_eval(poly_mul(m2, m2), j) == RatMatrix(2, 2));
}

TEST_CASE("integrality conversions") {
  RatMatrix q{{Rat(1, 2)}};
  CHECK_FALSE(is_integral(q));
  CHECK_THROWS_AS(to_integer(q), PreconditionError);
  CHECK(to_integer(to_rational(paper_matrix())) == paper_matrix());
}
