#include "menages/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <utility>

#include "menages/errors.hpp"

namespace menages {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::size_t bit_size(const BigInt& z) {
  return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::size_t bit_size(const Rational& q) {
  return bit_size(BigInt(q.get_num())) + bit_size(BigInt(q.get_den()));
}

std::string to_decimal(const BigInt& z) { return z.get_str(10); }

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size() ||
      !std::all_of(s.begin() + static_cast<long>(i), s.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    throw InvalidInput("not an integer: '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs, char var)
    : coeffs_(std::move(coeffs)), var_(var) {
  normalize();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs, char var) : var_(var) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const BigInt& c, char var) { return IntPoly({c}, var); }

IntPoly IntPoly::monomial(const BigInt& c, int power, char var) {
  std::vector<BigInt> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return IntPoly(std::move(v), var);
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : BigInt(0);
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly IntPoly::with_var(char var) const {
  IntPoly p = *this;
  p.var_ = var;
  return p;
}

IntPoly IntPoly::truncated(std::size_t n) const {
  IntPoly p = *this;
  if (p.coeffs_.size() > n) p.coeffs_.resize(n);
  p.normalize();
  return p;
}

static void check_vars(const IntPoly& a, const IntPoly& b) {
  if (a.var() != b.var()) {
    throw VariableMismatch(std::string("polynomials in '") + a.var() + "' and '" + b.var() + "'");
  }
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  check_vars(*this, other);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
  check_vars(*this, other);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  normalize();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  check_vars(a, b);
  if (a.is_zero() || b.is_zero()) return IntPoly(a.var());
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out), a.var());
}

IntPoly IntPoly::operator-() const {
  IntPoly p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

std::string IntPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << var_;
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

IntPoly poly_add(const IntPoly& p, const IntPoly& q) { return p + q; }
IntPoly poly_mul(const IntPoly& p, const IntPoly& q) { return p * q; }
Rational poly_eval(const IntPoly& p, const Rational& x) { return p.eval(x); }

IntPoly poly_pow(const IntPoly& p, unsigned e) {
  IntPoly result = IntPoly::constant(1, p.var());
  for (unsigned i = 0; i < e; ++i) result = result * p;
  return result;
}

IntPoly poly_shift(const IntPoly& p, long s) {
  // Horner in the shifted variable: (((c_d)(x+s) + c_{d-1})(x+s) + ...).
  const IntPoly step({s, 1}, p.var());
  IntPoly acc(p.var());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * step + IntPoly::constant(*it, p.var());
  return acc;
}

IntPoly parse_poly(std::string_view text, char var) {
  // Normalize: drop whitespace, map U+2212 to '-', "**" to '^'.
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isspace(ch)) continue;
    if (ch == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s += '-';
      i += 2;
      continue;
    }
    if (ch == '*' && i + 1 < text.size() && text[i + 1] == '*') {
      s += '^';
      ++i;
      continue;
    }
    s += static_cast<char>(ch);
  }
  if (s.empty()) throw InvalidInput("empty polynomial");

  std::vector<BigInt> coeffs;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidInput("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    BigInt c = start == pos ? BigInt(1) : BigInt(s.substr(start, pos - start), 10);
    bool has_digits = start != pos;
    std::size_t power = 0;
    const bool star = pos < s.size() && s[pos] == '*';
    if (star) ++pos;
    if (star && (pos == s.size() || s[pos] != var)) fail("expected '" + std::string(1, var) + "' after '*'");
    if (pos < s.size() && s[pos] == var) {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t ps = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (ps == pos) fail("missing exponent");
        power = std::stoul(s.substr(ps, pos - ps));
      }
    } else if (!has_digits) {
      fail("expected a coefficient or '" + std::string(1, var) + "'");
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] += sign * c;
  }
  return IntPoly(std::move(coeffs), var);
}

// ---------------------------------------------------------------------------
// RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  for (const auto& r : rows) {
    RatVector row;
    for (long x : r) row.emplace_back(x);
    append_row(row);
  }
}

void RatMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && data_.empty()) cols_ = row.size();
  if (row.size() != cols_) throw InvalidInput("row length does not match matrix width");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rational> RatMatrix::multiply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw InvalidInput("vector length does not match matrix width");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != 0 && v[c] != 0) acc += at(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

std::vector<BigInt> clear_denominators(const RatVector& v) {
  BigInt l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(v.size());
  BigInt g = 0;
  for (const auto& q : v) {
    BigInt z = BigInt(q.get_num()) * (l / BigInt(q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    out.push_back(std::move(z));
  }
  if (g > 1) {
    for (auto& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

// Builds the reduced-form basis from a reduced row echelon form given as
// (pivot column, row) pairs.
template <typename Field, typename Neg>
static std::vector<std::vector<Field>> basis_from_rref(
    std::size_t cols, const std::vector<std::size_t>& pivots,
    const std::vector<std::vector<Field>>& rref, Neg neg, Field one, Field zero) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Field>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Field> v(cols, zero);
    v[f] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = neg(rref[r][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVector> nullspace_exact(const RatMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<RatVector> a(rows, RatVector(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m.at(r, c);

  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::optional<std::size_t> best;
    for (std::size_t r = prow; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      if (!best || bit_size(a[r][c]) < bit_size(a[*best][c])) best = r;
    }
    if (!best) continue;
    std::swap(a[prow], a[*best]);
    Rational inv = 1 / a[prow][c];
    for (std::size_t k = c; k < cols; ++k) a[prow][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == prow || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (a[prow][k] != 0) a[r][k] -= f * a[prow][k];
      }
    }
    pivots.push_back(c);
    ++prow;
  }
  a.resize(pivots.size());
  return basis_from_rref<Rational>(
      cols, pivots, a, [](const Rational& x) { return Rational(-x); }, Rational(1), Rational(0));
}

// ---------------------------------------------------------------------------
// Multi-modular nullspace.

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

const std::vector<u64>& primes() {
  static const std::vector<u64> list = [] {
    std::vector<u64> out;
    BigInt p = BigInt(1) << 61;
    for (int i = 0; i < 256; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      out.push_back(p.get_ui());
    }
    return out;
  }();
  return list;
}

// unsigned long is 64 bits on the LP64 targets this builds for.
static_assert(sizeof(unsigned long) == 8);

u64 reduce(const BigInt& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p)); }

struct ModResult {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<u64>> basis;
};

// Integer rows (denominators already cleared) reduced mod p.
ModResult nullspace_mod(const std::vector<std::vector<BigInt>>& rows, std::size_t cols, u64 p) {
  ModResult res;
  std::vector<std::vector<u64>> a(rows.size(), std::vector<u64>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = reduce(rows[r][c], p);

  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < a.size(); ++c) {
    std::size_t r = prow;
    while (r < a.size() && a[r][c] == 0) ++r;
    if (r == a.size()) continue;
    std::swap(a[prow], a[r]);
    u64 inv = inv_mod(a[prow][c], p);
    for (std::size_t k = c; k < cols; ++k) a[prow][k] = mul_mod(a[prow][k], inv, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == prow || a[i][c] == 0) continue;
      u64 f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (a[prow][k] == 0) continue;
        u64 sub = mul_mod(f, a[prow][k], p);
        a[i][k] = a[i][k] >= sub ? a[i][k] - sub : a[i][k] + p - sub;
      }
    }
    res.pivots.push_back(c);
    ++prow;
  }
  a.resize(res.pivots.size());
  res.basis = basis_from_rref<u64>(
      cols, res.pivots, a, [p](u64 x) { return x == 0 ? 0 : p - x; }, u64{1}, u64{0});
  return res;
}

// Smallest |a|, b > 0 with a/b == x mod m and |a|, b <= sqrt(m/2).
std::optional<Rational> rational_reconstruct(const BigInt& x, const BigInt& m) {
  BigInt bound = sqrt(BigInt(m / 2));
  BigInt r0 = m, r1 = x, s0 = 0, s1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  BigInt g = gcd(s1, m);
  if (g != 1) return std::nullopt;
  return make_rational(r1, s1);
}

bool annihilates(const std::vector<std::vector<BigInt>>& rows, const std::vector<BigInt>& v) {
  BigInt acc;
  for (const auto& row : rows) {
    acc = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (v[c] != 0 && row[c] != 0) mpz_addmul(acc.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
    }
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<RatVector> nullspace(const RatMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (cols == 0) return {};
  if (rows == 0) return nullspace_exact(m);

  std::vector<std::vector<BigInt>> irows;
  irows.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    RatVector row(cols);
    for (std::size_t c = 0; c < cols; ++c) row[c] = m.at(r, c);
    BigInt l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<BigInt> ir(cols);
    for (std::size_t c = 0; c < cols; ++c) ir[c] = BigInt(row[c].get_num()) * (l / BigInt(row[c].get_den()));
    irows.push_back(std::move(ir));
  }

  // Reference pivot set: maximal rank, then lexicographically smallest.
  // rank over Q >= rank mod p for every p, so a full-rank prime certifies
  // the empty nullspace on its own.
  std::vector<std::size_t> pivots;
  std::vector<std::vector<BigInt>> residues;  // CRT accumulators per basis entry
  BigInt modulus = 1;
  std::optional<std::vector<RatVector>> previous;
  bool have_reference = false;

  for (u64 p : primes()) {
    ModResult mr = nullspace_mod(irows, cols, p);
    if (mr.pivots.size() == cols) return {};

    bool better = !have_reference || mr.pivots.size() > pivots.size() ||
                  (mr.pivots.size() == pivots.size() && mr.pivots < pivots);
    if (better) {
      pivots = mr.pivots;
      residues.assign(mr.basis.size(), std::vector<BigInt>(cols));
      for (std::size_t i = 0; i < mr.basis.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c) residues[i][c] = static_cast<unsigned long>(mr.basis[i][c]);
      modulus = static_cast<unsigned long>(p);
      previous.reset();
      have_reference = true;
      continue;
    }
    if (mr.pivots != pivots) continue;  // unlucky prime

    // Garner step: x <- x + M * ((r - x) * M^{-1} mod p).
    u64 minv = inv_mod(reduce(modulus, p), p);
    for (std::size_t i = 0; i < residues.size(); ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        u64 x = reduce(residues[i][c], p);
        u64 r = mr.basis[i][c];
        u64 diff = r >= x ? r - x : r + p - x;
        u64 k = mul_mod(diff, minv, p);
        residues[i][c] += modulus * BigInt(static_cast<unsigned long>(k));
      }
    }
    modulus *= BigInt(static_cast<unsigned long>(p));

    std::vector<RatVector> candidate;
    bool reconstructed = true;
    for (const auto& res : residues) {
      RatVector v(cols);
      for (std::size_t c = 0; c < cols && reconstructed; ++c) {
        auto q = rational_reconstruct(res[c], modulus);
        if (!q) reconstructed = false;
        else v[c] = *q;
      }
      if (!reconstructed) break;
      candidate.push_back(std::move(v));
    }
    if (!reconstructed) {
      previous.reset();
      continue;
    }
    if (previous && *previous == candidate) {
      bool verified = std::all_of(candidate.begin(), candidate.end(), [&](const RatVector& v) {
        return annihilates(irows, clear_denominators(v));
      });
      if (verified) return candidate;
    }
    previous = std::move(candidate);
  }
  return nullspace_exact(m);
}

}  // namespace menages
