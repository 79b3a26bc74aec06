#pragma once

// Exact integer, rational, polynomial and linear-algebra substrate.
//
// Integers and rationals are GMP values; mpq_class keeps every result in
// lowest terms with a positive denominator. IntPoly is a dense coefficient
// list tagged with its variable name so that polynomials in t (rook
// polynomials) and in n (recurrence coefficients) cannot be mixed by accident.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace menages {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws InvalidInput on a zero denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

/// Number of bits needed for |num| plus |den|; used to rank pivots and solutions.
std::size_t bit_size(const Rational& q);
std::size_t bit_size(const BigInt& z);

/// Decimal rendering and parsing of BigInt (parse throws InvalidInput).
std::string to_decimal(const BigInt& z);
BigInt parse_bigint(std::string_view text);

/// Dense univariate polynomial with BigInt coefficients.
///
/// coeffs()[k] is the coefficient of var^k. The list never ends in a zero,
/// so the zero polynomial is the empty list and has degree -1.
class IntPoly {
 public:
  explicit IntPoly(char var = 't') : var_(var) {}
  IntPoly(std::vector<BigInt> coeffs, char var = 't');
  IntPoly(std::initializer_list<long> coeffs, char var = 't');

  static IntPoly constant(const BigInt& c, char var = 't');
  static IntPoly monomial(const BigInt& c, int power, char var = 't');

  char var() const noexcept { return var_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of var^k; zero past the degree.
  BigInt coeff(std::size_t k) const;

  Rational eval(const Rational& x) const;
  BigInt eval(const BigInt& x) const;

  /// gcd of the coefficients, non-negative; zero for the zero polynomial.
  BigInt content() const;
  IntPoly with_var(char var) const;
  /// Drops every term of degree >= n.
  IntPoly truncated(std::size_t n) const;

  IntPoly& operator+=(const IntPoly& other);
  IntPoly& operator-=(const IntPoly& other);
  IntPoly& operator*=(const BigInt& scalar);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& s) { return a *= s; }
  friend IntPoly operator*(const BigInt& s, IntPoly a) { return a *= s; }
  IntPoly operator-() const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

  /// Ascending powers with explicit operators: "1 + 3*t - t^2".
  std::string to_string() const;

 private:
  void normalize();

  std::vector<BigInt> coeffs_;
  char var_;
};

IntPoly poly_add(const IntPoly& p, const IntPoly& q);
IntPoly poly_mul(const IntPoly& p, const IntPoly& q);
Rational poly_eval(const IntPoly& p, const Rational& x);
IntPoly poly_pow(const IntPoly& p, unsigned e);
/// p(var + s).
IntPoly poly_shift(const IntPoly& p, long s);

/// Parses the output of IntPoly::to_string back (whitespace-insensitive;
/// also accepts "3t^2", "t**2", a leading unary minus and the U+2212 minus sign).
IntPoly parse_poly(std::string_view text, char var = 't');

/// Row-major dense matrix of rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends a row; the first appended row fixes the column count of an empty matrix.
  void append_row(const std::vector<Rational>& row);

  std::vector<Rational> multiply(const std::vector<Rational>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

using RatVector = std::vector<Rational>;

/// Basis of the right nullspace {v : M v = 0}.
///
/// The basis is returned in reduced form: one vector per free column f of the
/// reduced row echelon form, with v[f] = 1 and zeros on the other free
/// columns. Empty iff M has full column rank.
///
/// Tall systems go through a multi-modular elimination with rational
/// reconstruction; every reconstructed basis vector is checked against M
/// exactly before it is returned, and the dimension is certified by the
/// modular rank. Falls back to nullspace_exact when reconstruction does not
/// settle.
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Same contract as nullspace(), computed by Gauss-Jordan elimination over
/// the rationals, choosing the candidate pivot with the smallest bit size.
std::vector<RatVector> nullspace_exact(const RatMatrix& m);

/// Multiplies v by the lcm of its denominators and divides out the content:
/// the primitive integer vector on the same line.
std::vector<BigInt> clear_denominators(const RatVector& v);

}  // namespace menages
