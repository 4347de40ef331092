#include "upsilon/exact_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace upsilon {

// ---------------------------------------------------------------- Residue

Residue::Residue(const Int& value, const Int& modulus) : n_(modulus) {
  if (modulus < 2) throw PreconditionError("residue modulus must be at least 2");
  mpz_fdiv_r(v_.get_mpz_t(), value.get_mpz_t(), n_.get_mpz_t());
}

void Residue::check_same(const Residue& o) const {
  if (n_ != o.n_) throw PreconditionError("residues with different moduli");
}

bool Residue::is_unit() const {
  Int g;
  mpz_gcd(g.get_mpz_t(), v_.get_mpz_t(), n_.get_mpz_t());
  return g == 1;
}

Residue Residue::inverse() const {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), n_.get_mpz_t()))
    throw PreconditionError("residue is not invertible");
  return Residue(r, n_);
}

Residue Residue::operator+(const Residue& o) const {
  check_same(o);
  return Residue(v_ + o.v_, n_);
}
Residue Residue::operator-(const Residue& o) const {
  check_same(o);
  return Residue(v_ - o.v_, n_);
}
Residue Residue::operator*(const Residue& o) const {
  check_same(o);
  return Residue(v_ * o.v_, n_);
}
Residue Residue::operator-() const { return Residue(-v_, n_); }

Int reduce_mod(const Rat& q, const Int& n) {
  if (n < 2) throw PreconditionError("modulus must be at least 2");
  Int inv;
  Int den = q.get_den();
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()))
    throw PreconditionError("denominator " + den.get_str() + " is not invertible mod " + n.get_str());
  Int r = q.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------- conversions

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
  return r;
}

bool is_integral(const RatMatrix& a) {
  for (const auto& x : a.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).get_den() != 1) throw PreconditionError("matrix entry is not an integer");
      r(i, j) = a(i, j).get_num();
    }
  return r;
}

// ---------------------------------------------------------------- decompositions

Int ModuleDecomposition::torsion_order() const {
  Int n = 1;
  for (const auto& f : invariant_factors) n *= f;
  return n;
}

std::string ModuleDecomposition::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& f : invariant_factors) parts.push_back("Z/" + f.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

ModuleDecomposition ModuleDecomposition::from_cyclic_orders(std::size_t free_rank, std::vector<Int> orders) {
  std::vector<Int> finite;
  for (auto& o : orders) {
    if (o < 0) o = -o;
    if (o == 0) ++free_rank;
    else if (o != 1) finite.push_back(o);
  }
  ModuleDecomposition d;
  d.free_rank = free_rank;
  if (finite.empty()) return d;
  IntMatrix diag(finite.size(), finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) diag(i, i) = finite[i];
  for (const auto& x : snf(diag).diagonal())
    if (x > 1) d.invariant_factors.push_back(x);
  return d;
}

// ---------------------------------------------------------------- Smith normal form

std::vector<Int> SnfResult::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

struct SnfWork {
  IntMatrix S, U, V;
  std::size_t m, n;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(S(a, j), S(b, j));
    for (std::size_t j = 0; j < m; ++j) std::swap(U(a, j), U(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(S(i, a), S(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(V(i, a), V(i, b));
  }
  // row i -= q * row t
  void row_submul(std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (S(t, j) != 0) mpz_submul(S(i, j).get_mpz_t(), q.get_mpz_t(), S(t, j).get_mpz_t());
    for (std::size_t j = 0; j < m; ++j)
      if (U(t, j) != 0) mpz_submul(U(i, j).get_mpz_t(), q.get_mpz_t(), U(t, j).get_mpz_t());
  }
  // col j -= q * col t
  void col_submul(std::size_t j, std::size_t t, const Int& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (S(i, t) != 0) mpz_submul(S(i, j).get_mpz_t(), q.get_mpz_t(), S(i, t).get_mpz_t());
    for (std::size_t i = 0; i < n; ++i)
      if (V(i, t) != 0) mpz_submul(V(i, j).get_mpz_t(), q.get_mpz_t(), V(i, t).get_mpz_t());
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) S(i, j) = -S(i, j);
    for (std::size_t j = 0; j < m; ++j) U(i, j) = -U(i, j);
  }
};

// Quotient rounded to nearest, so remainders stay at most half the divisor.
Int nearest_quotient(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int twice = 2 * r;
  if (abs(twice) > abs(b)) q += 1;
  return q;
}

}  // namespace

SnfResult snf(const IntMatrix& a) {
  SnfWork w{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()), a.rows(), a.cols()};
  const std::size_t m = w.m, n = w.n;
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (w.S(i, j) != 0 && (pi == m || abs(w.S(i, j)) < abs(w.S(pi, pj)))) pi = i, pj = j;
    if (pi == m) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (w.S(i, t) != 0) {
          w.row_submul(i, t, nearest_quotient(w.S(i, t), w.S(t, t)));
          if (w.S(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (w.S(t, j) != 0) {
          w.col_submul(j, t, nearest_quotient(w.S(t, j), w.S(t, t)));
          if (w.S(t, j) != 0) clean = false;
        }
      if (!clean) {
        // A remainder smaller than the pivot survived: move it to the pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (w.S(i, t) != 0 && abs(w.S(i, t)) < abs(w.S(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.S(t, j) != 0 && abs(w.S(t, j)) < abs(w.S(bi, bj))) bi = t, bj = j;
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(w.S(i, j).get_mpz_t(), w.S(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.row_submul(t, bad, Int(-1));
    }
    if (w.S(t, t) < 0) w.negate_row(t);
  }
  return SnfResult{std::move(w.U), std::move(w.S), std::move(w.V), t};
}

ModuleDecomposition cokernel(const IntMatrix& a) {
  SnfResult r = snf(a);
  ModuleDecomposition d;
  d.free_rank = a.rows() - r.rank;
  for (std::size_t i = 0; i < r.rank; ++i)
    if (r.S(i, i) > 1) d.invariant_factors.push_back(r.S(i, i));
  return d;
}

namespace {

void check_modulus(const Int& n) {
  if (n < 2) throw PreconditionError("modulus must be at least 2");
}

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

ModuleDecomposition kernel_mod_n(const IntMatrix& a, const Int& n) {
  check_modulus(n);
  SnfResult r = snf(a);
  std::vector<Int> orders;
  for (std::size_t i = 0; i < a.cols(); ++i) orders.push_back(i < r.rank ? gcd_int(r.S(i, i), n) : n);
  return ModuleDecomposition::from_cyclic_orders(0, orders);
}

std::vector<CyclicGenerator> kernel_mod_n_generators(const IntMatrix& a, const Int& n) {
  check_modulus(n);
  SnfResult r = snf(a);
  std::vector<CyclicGenerator> out;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    Int g = i < r.rank ? gcd_int(r.S(i, i), n) : n;
    if (g == 1) continue;
    Int scale = n / g;
    CyclicGenerator c{g, {}};
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Int x = r.V(k, i) * scale;
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
      c.generator.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

ModuleDecomposition kernel_QmodZ_torsion(const IntMatrix& a) {
  SnfResult r = snf(a);
  if (r.rank != a.cols()) throw DivisibleKernelError();
  ModuleDecomposition d;
  for (std::size_t i = 0; i < r.rank; ++i)
    if (r.S(i, i) > 1) d.invariant_factors.push_back(r.S(i, i));
  return d;
}

// ---------------------------------------------------------------- elimination

namespace {

// Fraction-free (Bareiss) elimination in place; returns the rank. When the
// matrix is square and nonsingular, the last pivot is the determinant up to
// the recorded sign of row swaps.
std::size_t bareiss(IntMatrix& m, int& sign) {
  const std::size_t rows = m.rows(), cols = m.cols();
  sign = 1;
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

IntMatrix clear_denominators(const RatMatrix& a) {
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  return m;
}

}  // namespace

std::size_t rank_over_Q(const IntMatrix& a) {
  IntMatrix m = a;
  int sign;
  return bareiss(m, sign);
}

std::size_t rank_over_Q(const RatMatrix& a) { return rank_over_Q(clear_denominators(a)); }

Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign;
  if (bareiss(m, sign) < n) return 0;
  return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& a) {
  if (!a.is_square()) throw PreconditionError("determinant of a non-square matrix");
  Rat scale = 1;
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
    scale /= Rat(l);
  }
  Rat d = Rat(determinant(m)) * scale;
  d.canonicalize();
  return d;
}

bool solve_unique(const RatMatrix& a, const std::vector<Rat>& b, std::vector<Rat>& x) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.size() != n) throw PreconditionError("solve_unique needs a square system");
  RatMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return false;
    for (std::size_t j = 0; j <= n; ++j) std::swap(m(p, j), m(c, j));
    Rat inv = 1 / m(c, c);
    for (std::size_t j = c; j <= n; ++j) m(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  x.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n);
  return true;
}

// ---------------------------------------------------------------- polynomials

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rational(const IntPoly& p) {
  RatPoly r(p.begin(), p.end());
  trim(r);
  return r;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly c(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

void poly_divmod(const RatPoly& a, const RatPoly& b_in, RatPoly& q, RatPoly& r) {
  RatPoly b = b_in;
  trim(b);
  if (b.empty()) throw PreconditionError("polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rat(0));
  while (r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    Rat c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    trim(r);
  }
  trim(q);
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

RatPoly poly_derivative(const RatPoly& a) {
  RatPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rat(static_cast<long>(i)));
  trim(d);
  return d;
}

RatPoly poly_scale_argument(const RatPoly& p, const Rat& c) {
  RatPoly r = p;
  Rat pw = 1;
  for (auto& x : r) {
    x *= pw;
    pw *= c;
  }
  trim(r);
  return r;
}

bool poly_divides(const RatPoly& d, const RatPoly& p) {
  RatPoly q, r;
  poly_divmod(p, d, q, r);
  return r.empty();
}

Rat poly_eval(const RatPoly& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

RatMatrix poly_eval(const RatPoly& p, const RatMatrix& a) {
  if (!a.is_square()) throw PreconditionError("polynomial of a non-square matrix");
  RatMatrix v(a.rows(), a.cols());
  for (std::size_t i = p.size(); i-- > 0;) {
    v = v * a;
    for (std::size_t k = 0; k < a.rows(); ++k) v(k, k) += p[i];
  }
  return v;
}

std::vector<RatPoly> squarefree_decomposition(const RatPoly& p_in) {
  RatPoly p = p_in;
  trim(p);
  if (p.size() <= 1) return {};
  std::vector<RatPoly> out;
  RatPoly dp = poly_derivative(p);
  RatPoly a = poly_gcd(p, dp);
  RatPoly b, c, d, rem;
  poly_divmod(p, a, b, rem);
  RatPoly cq;
  poly_divmod(dp, a, c, rem);
  d = poly_sub(c, poly_derivative(b));
  while (b.size() > 1) {
    RatPoly ai = poly_gcd(b, d);
    out.push_back(ai);
    RatPoly nb, nc;
    poly_divmod(b, ai, nb, rem);
    poly_divmod(d, ai, nc, rem);
    b = nb;
    d = poly_sub(nc, poly_derivative(b));
  }
  while (!out.empty() && out.back().size() <= 1) out.pop_back();
  return out;
}

IntPoly charpoly(const IntMatrix& a) {
  if (!a.is_square()) throw PreconditionError("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  // Values det(tI - A) at t = 0..n, then Newton interpolation.
  std::vector<Rat> xs, coef;
  for (std::size_t t = 0; t <= n; ++t) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? Int(static_cast<long>(t)) : Int(0)) - a(i, j);
    xs.push_back(Rat(static_cast<long>(t)));
    coef.push_back(Rat(determinant(m)));
  }
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t i = n; i >= k; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k]);
      if (i == k) break;
    }
  RatPoly p{coef[n]};
  for (std::size_t i = n; i-- > 0;) {
    p = poly_mul(p, RatPoly{-xs[i], Rat(1)});
    if (p.empty()) p = RatPoly{Rat(0)};
    p[0] += coef[i];
  }
  IntPoly out(n + 1, Int(0));
  for (std::size_t i = 0; i < p.size() && i <= n; ++i) {
    if (p[i].get_den() != 1) throw PreconditionError("internal: non-integral characteristic polynomial");
    out[i] = p[i].get_num();
  }
  return out;
}

std::string poly_to_string(const IntPoly& p, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Int c = p[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    if (c != 1 || i == 0) os << c.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace upsilon
