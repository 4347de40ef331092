#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "upsilon/error.hpp"

namespace upsilon {

using Int = mpz_class;
using Rat = mpq_class;

// Element of Z/n, stored in the canonical range [0, n).
class Residue {
 public:
  Residue() = default;
  Residue(const Int& value, const Int& modulus);

  const Int& value() const { return v_; }
  const Int& modulus() const { return n_; }
  bool is_zero() const { return v_ == 0; }
  bool is_unit() const;
  Residue inverse() const;

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  bool operator==(const Residue& o) const { return n_ == o.n_ && v_ == o.v_; }

 private:
  void check_same(const Residue& o) const;
  Int v_ = 0;
  Int n_ = 0;
};

// Image of a rational number in Z/n; throws if the denominator is not invertible mod n.
Int reduce_mod(const Rat& q, const Int& n);

// Dense row-major matrix. One matrix holds one scalar type, so mixing
// integer, rational and residue entries is impossible by construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw PreconditionError("ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
    Matrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  Matrix operator+(const Matrix& b) const {
    check_same_shape(b);
    Matrix c = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }

  Matrix operator-(const Matrix& b) const {
    check_same_shape(b);
    Matrix c = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }

  bool operator==(const Matrix& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
  }
  bool operator!=(const Matrix& b) const { return !(*this == b); }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw PreconditionError("matrix-vector dimension mismatch");
    std::vector<T> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw PreconditionError("block out of range");
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw PreconditionError("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& a);
// Throws if some entry is not an integer.
IntMatrix to_integer(const RatMatrix& a);
bool is_integral(const RatMatrix& a);

// Free rank plus invariant factors f1 | f2 | ..., all > 1.
struct ModuleDecomposition {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  // Order of the torsion part.
  Int torsion_order() const;
  ModuleDecomposition torsion() const { return {0, invariant_factors}; }
  // "Z^2 + Z/3 + Z/15"; "0" for the zero module.
  std::string to_string() const;
  bool operator==(const ModuleDecomposition& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool operator!=(const ModuleDecomposition& o) const { return !(*this == o); }

  // Invariant-factor form of Z^free_rank + sum Z/orders[i]. Orders equal to 0
  // add to the free rank, orders equal to 1 are dropped.
  static ModuleDecomposition from_cyclic_orders(std::size_t free_rank, std::vector<Int> orders);
};

struct SnfResult {
  IntMatrix U, S, V;  // U * A * V == S
  std::size_t rank = 0;
  std::vector<Int> diagonal() const;
};

SnfResult snf(const IntMatrix& a);
ModuleDecomposition cokernel(const IntMatrix& a);

// {x in (Z/n)^cols : A x = 0 mod n}.
ModuleDecomposition kernel_mod_n(const IntMatrix& a, const Int& n);

// A cyclic summand of a kernel mod n: `generator` has additive order `order`.
struct CyclicGenerator {
  Int order;
  std::vector<Int> generator;
};
// Direct-sum generators of the kernel mod n, one per nontrivial cyclic summand.
std::vector<CyclicGenerator> kernel_mod_n_generators(const IntMatrix& a, const Int& n);

// Thrown when ker(A) on (Q/Z)^cols has a divisible part (A lacks full column rank).
class DivisibleKernelError : public PreconditionError {
 public:
  DivisibleKernelError() : PreconditionError("divisible kernel part present: matrix lacks full column rank") {}
};

// The finite group ker(A) acting on (Q/Z)^cols.
ModuleDecomposition kernel_QmodZ_torsion(const IntMatrix& a);

std::size_t rank_over_Q(const IntMatrix& a);
std::size_t rank_over_Q(const RatMatrix& a);
Int determinant(const IntMatrix& a);
Rat determinant(const RatMatrix& a);

// Unique solution of A x = b over Q, or nothing if A is singular.
bool solve_unique(const RatMatrix& a, const std::vector<Rat>& b, std::vector<Rat>& x);

// Polynomials with coefficients listed from the constant term upward.
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

// det(zI - A), monic.
IntPoly charpoly(const IntMatrix& a);

RatPoly to_rational(const IntPoly& p);
void trim(RatPoly& p);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
// a = q*b + r with deg r < deg b.
void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly poly_gcd(RatPoly a, RatPoly b);  // monic, or empty when both are zero
RatPoly poly_derivative(const RatPoly& a);
// p(z) -> p(c z).
RatPoly poly_scale_argument(const RatPoly& p, const Rat& c);
bool poly_divides(const RatPoly& d, const RatPoly& p);
Rat poly_eval(const RatPoly& p, const Rat& x);
RatMatrix poly_eval(const RatPoly& p, const RatMatrix& a);
// Yun: p = c * prod a_i^i with a_i squarefree and pairwise coprime. Entry i-1 holds a_i.
std::vector<RatPoly> squarefree_decomposition(const RatPoly& p);
std::string poly_to_string(const IntPoly& p, const std::string& var = "z");

}  // namespace upsilon
