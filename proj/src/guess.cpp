#include "menages/guess.hpp"

#include <algorithm>
#include <string>

#include "menages/errors.hpp"

namespace menages {

int CFiniteRec::degree() const {
  int d = 0;
  for (const auto& c : coeffs) d = std::max(d, c.degree());
  return d;
}

namespace {

std::size_t max_bits(const std::vector<BigInt>& v) {
  std::size_t best = 0;
  for (const auto& z : v) best = std::max(best, bit_size(z));
  return best;
}

// Index arithmetic: terms[k] has index first + k.
struct Indexed {
  long first;
  std::size_t size;
  long last() const { return first + static_cast<long>(size) - 1; }
  std::size_t at(long index) const { return static_cast<std::size_t>(index - first); }
};

// ---------------------------------------------------------------------------
// C-finite

// Does R_n == sum_i c_i R_{n-i} hold (n is the index of the newest term)?
bool cfinite_holds(const std::vector<IntPoly>& coeffs, const std::vector<IntPoly>& terms,
                   const Indexed& ix, long n) {
  IntPoly rhs(terms.front().var());
  for (std::size_t i = 1; i <= coeffs.size(); ++i)
    rhs += coeffs[i - 1] * terms[ix.at(n - static_cast<long>(i))];
  return rhs == terms[ix.at(n)];
}

// Nullspace-based fit of one order d; rows are the newest-term indices used.
std::optional<std::vector<IntPoly>> fit_cfinite_order(const std::vector<IntPoly>& terms,
                                                      const Indexed& ix, int d, int tdeg,
                                                      const std::vector<long>& rows) {
  const char var = terms.front().var();
  const std::size_t per = static_cast<std::size_t>(tdeg) + 1;
  const std::size_t unknowns = 1 + static_cast<std::size_t>(d) * per;
  RatMatrix m(0, unknowns);
  for (long n : rows) {
    const IntPoly& target = terms[ix.at(n)];
    int top = target.degree();
    for (int i = 1; i <= d; ++i) top = std::max(top, terms[ix.at(n - i)].degree() + tdeg);
    for (int p = 0; p <= top; ++p) {
      RatVector row(unknowns);
      row[0] = Rational(target.coeff(static_cast<std::size_t>(p)));
      bool nonzero = row[0] != 0;
      for (int i = 1; i <= d; ++i) {
        const IntPoly& prev = terms[ix.at(n - i)];
        for (int j = 0; j <= tdeg && j <= p; ++j) {
          BigInt c = prev.coeff(static_cast<std::size_t>(p - j));
          if (c == 0) continue;
          row[1 + static_cast<std::size_t>(i - 1) * per + static_cast<std::size_t>(j)] = Rational(-c);
          nonzero = true;
        }
      }
      if (nonzero) m.append_row(row);
    }
  }
  if (m.rows() == 0) return std::nullopt;

  std::optional<std::vector<BigInt>> best;
  for (const auto& v : nullspace(m)) {
    if (v[0] == 0) continue;
    // Normalize alpha = 1 and keep only integral solutions.
    bool integral = true;
    std::vector<BigInt> scaled(unknowns);
    for (std::size_t k = 0; k < unknowns; ++k) {
      Rational q = v[k] / v[0];
      if (q.get_den() != 1) {
        integral = false;
        break;
      }
      scaled[k] = q.get_num();
    }
    if (!integral) continue;
    if (!best || max_bits(scaled) < max_bits(*best)) best = std::move(scaled);
  }
  if (!best) return std::nullopt;

  std::vector<IntPoly> coeffs;
  for (int i = 0; i < d; ++i) {
    std::vector<BigInt> c(per);
    for (std::size_t j = 0; j < per; ++j) c[j] = (*best)[1 + static_cast<std::size_t>(i) * per + j];
    coeffs.emplace_back(std::move(c), var);
  }
  if (coeffs.back().is_zero()) return std::nullopt;  // really a lower order
  return coeffs;
}

std::optional<CFiniteRec> guess_cfinite_impl(const std::vector<IntPoly>& terms, int max_order,
                                             int max_tdeg, const GuessOptions& opts) {
  const Indexed ix{opts.first_index, terms.size()};
  const long g = opts.held_out;
  for (int d = 1; d <= max_order; ++d) {
    // Fitting rows: newest-term indices first + d .. last - g; keep the latest ones.
    const long lo = ix.first + d, hi = ix.last() - g;
    if (hi < lo) break;
    const long want = d + max_tdeg + opts.margin;
    std::vector<long> rows;
    for (long n = std::max(lo, hi - want + 1); n <= hi; ++n) rows.push_back(n);

    auto coeffs = fit_cfinite_order(terms, ix, d, max_tdeg, rows);
    if (!coeffs) continue;
    bool held = true;
    for (long n = hi + 1; n <= ix.last() && held; ++n) held = cfinite_holds(*coeffs, terms, ix, n);
    if (!held) continue;

    long valid = ix.first + d;  // smallest newest-index from which it holds throughout
    for (long n = ix.last(); n >= ix.first + d; --n) {
      if (!cfinite_holds(*coeffs, terms, ix, n)) {
        valid = n + 1;
        break;
      }
    }
    CFiniteRec rec;
    rec.order = d;
    rec.coeffs = std::move(*coeffs);
    rec.start = valid - d;
    for (int k = 0; k < d; ++k) rec.initial.push_back(terms[ix.at(rec.start + k)]);
    return rec;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Holonomic

BigInt holonomic_residual(const HolonomicRec& rec, const std::vector<BigInt>& terms, const Indexed& ix,
                          long n) {
  BigInt acc = 0;
  const BigInt nn = n;
  for (int i = 0; i <= rec.order; ++i) acc += rec.coeffs[static_cast<std::size_t>(i)].eval(nn) * terms[ix.at(n + i)];
  return acc;
}

}  // namespace

std::size_t cfinite_terms_needed(int max_order, int max_tdeg, int held_out) {
  return static_cast<std::size_t>(std::max(1, 2 * max_order + max_tdeg + held_out));
}

std::size_t holonomic_terms_needed(int max_complexity, int held_out, int max_degree) {
  std::size_t need = 0;
  for (int d = 1; d <= max_complexity; ++d) {
    int cap = max_complexity - d;
    if (max_degree >= 0) cap = std::min(cap, max_degree);
    for (int deg = 0; deg <= cap; ++deg) {
      need = std::max(need, static_cast<std::size_t>((d + 1) * (deg + 1) + d + held_out));
    }
  }
  return need;
}

std::optional<CFiniteRec> guess_cfinite_poly(const std::vector<IntPoly>& terms, int max_order,
                                             int max_tdeg, const GuessOptions& opts) {
  if (max_order < 0 || max_tdeg < 0) throw InvalidInput("budgets must be non-negative");
  const std::size_t need = cfinite_terms_needed(max_order, max_tdeg, opts.held_out);
  if (terms.size() < need || terms.empty()) {
    throw InsufficientTerms("need at least " + std::to_string(std::max<std::size_t>(need, 1)) +
                            " terms, got " + std::to_string(terms.size()));
  }
  return guess_cfinite_impl(terms, max_order, max_tdeg, opts);
}

std::optional<CFiniteRec> guess_cfinite_scalar(const std::vector<BigInt>& terms, int max_order,
                                               const GuessOptions& opts) {
  if (max_order < 0) throw InvalidInput("budgets must be non-negative");
  const std::size_t need = cfinite_terms_needed(max_order, 0, opts.held_out);
  if (terms.size() < need || terms.empty()) {
    throw InsufficientTerms("need at least " + std::to_string(std::max<std::size_t>(need, 1)) +
                            " terms, got " + std::to_string(terms.size()));
  }
  std::vector<IntPoly> polys;
  polys.reserve(terms.size());
  for (const auto& a : terms) polys.push_back(IntPoly::constant(a, 't'));
  return guess_cfinite_impl(polys, max_order, 0, opts);
}

std::optional<HolonomicRec> guess_holonomic(const std::vector<BigInt>& terms, int max_complexity,
                                            const GuessOptions& opts, int max_degree) {
  auto degree_cap = [&](int d) {
    int cap = max_complexity - d;
    return max_degree >= 0 ? std::min(cap, max_degree) : cap;
  };
  if (max_complexity < 0) throw InvalidInput("budgets must be non-negative");
  const std::size_t need = holonomic_terms_needed(max_complexity, opts.held_out, max_degree);
  if (terms.size() < need) {
    throw InsufficientTerms("need at least " + std::to_string(need) + " terms for complexity " +
                            std::to_string(max_complexity) + ", got " + std::to_string(terms.size()));
  }
  const Indexed ix{opts.first_index, terms.size()};

  for (int d = 1; d <= max_complexity; ++d) {
    for (int deg = 0; deg <= degree_cap(d); ++deg) {
      const std::size_t per = static_cast<std::size_t>(deg) + 1;
      const std::size_t unknowns = static_cast<std::size_t>(d + 1) * per;
      // Row n uses a(n) .. a(n+d); the last `held_out` rows are held back.
      const long lo = ix.first, hi = ix.last() - d - opts.held_out;
      const long want = static_cast<long>(unknowns) + opts.margin;
      RatMatrix m(0, unknowns);
      for (long n = std::max(lo, hi - want + 1); n <= hi; ++n) {
        RatVector row(unknowns);
        for (int i = 0; i <= d; ++i) {
          BigInt power = 1;
          for (std::size_t j = 0; j < per; ++j) {
            row[static_cast<std::size_t>(i) * per + j] = Rational(power * terms[ix.at(n + i)]);
            power *= n;
          }
        }
        m.append_row(row);
      }

      std::optional<std::vector<BigInt>> best;
      for (const auto& v : nullspace(m)) {
        auto ints = clear_denominators(v);
        bool lead_nonzero = std::any_of(ints.begin() + static_cast<long>(d * per), ints.end(),
                                        [](const BigInt& z) { return z != 0; });
        if (!lead_nonzero) continue;
        if (!best || max_bits(ints) < max_bits(*best)) best = std::move(ints);
      }
      if (!best) continue;

      HolonomicRec rec;
      rec.order = d;
      for (int i = 0; i <= d; ++i) {
        std::vector<BigInt> c(per);
        for (std::size_t j = 0; j < per; ++j) c[j] = (*best)[static_cast<std::size_t>(i) * per + j];
        rec.coeffs.emplace_back(std::move(c), 'n');
      }
      if (rec.coeffs.back().coeffs().back() < 0) {
        for (auto& p : rec.coeffs) p = -p;
      }
      rec.degree = 0;
      for (const auto& p : rec.coeffs) rec.degree = std::max(rec.degree, p.degree());

      bool held = true;
      for (long n = hi + 1; n <= ix.last() - d && held; ++n) held = holonomic_residual(rec, terms, ix, n) == 0;
      if (!held) continue;

      rec.valid_from = ix.first;
      for (long n = ix.last() - d; n >= ix.first; --n) {
        if (holonomic_residual(rec, terms, ix, n) != 0) {
          rec.valid_from = n + 1;
          break;
        }
      }
      for (int k = 0; k < d; ++k) rec.initial.push_back(terms[ix.at(rec.valid_from + k)]);
      return rec;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Checking and extension

bool check_recurrence(const CFiniteRec& rec, const std::vector<IntPoly>& terms, long first_index,
                      long from_n) {
  if (terms.empty()) return true;
  const Indexed ix{first_index, terms.size()};
  const long lowest = std::max(from_n, first_index);
  for (long n = lowest + rec.order; n <= ix.last(); ++n) {
    if (!cfinite_holds(rec.coeffs, terms, ix, n)) return false;
  }
  return true;
}

bool check_recurrence(const CFiniteRec& rec, const std::vector<BigInt>& terms, long first_index,
                      long from_n) {
  std::vector<IntPoly> polys;
  const char var = rec.coeffs.empty() ? 't' : rec.coeffs.front().var();
  for (const auto& a : terms) polys.push_back(IntPoly::constant(a, var));
  return check_recurrence(rec, polys, first_index, from_n);
}

bool check_recurrence(const HolonomicRec& rec, const std::vector<BigInt>& terms, long first_index,
                      long from_n) {
  if (terms.empty()) return true;
  const Indexed ix{first_index, terms.size()};
  for (long n = std::max(from_n, first_index); n + rec.order <= ix.last(); ++n) {
    if (holonomic_residual(rec, terms, ix, n) != 0) return false;
  }
  return true;
}

std::vector<BigInt> extend_sequence(const HolonomicRec& rec, std::vector<BigInt> terms,
                                    long first_index, std::size_t count) {
  const long known_last = first_index + static_cast<long>(terms.size()) - 1;
  if (first_index > rec.valid_from || known_last < rec.valid_from + rec.order - 1) {
    throw InvalidInput("terms do not cover the recurrence's initial segment");
  }
  const IntPoly& lead = rec.coeffs.back();
  while (terms.size() < count) {
    const long k = first_index + static_cast<long>(terms.size());
    const long n = k - rec.order;
    const BigInt nn = n;
    BigInt denom = lead.eval(nn);
    if (denom == 0) {
      throw SingularRecurrence("leading coefficient vanishes when computing a(" + std::to_string(k) + ")", k);
    }
    BigInt acc = 0;
    for (int i = 0; i < rec.order; ++i) {
      acc -= rec.coeffs[static_cast<std::size_t>(i)].eval(nn) * terms[static_cast<std::size_t>(n + i - first_index)];
    }
    if (!mpz_divisible_p(acc.get_mpz_t(), denom.get_mpz_t())) {
      throw NonIntegralExtension("a(" + std::to_string(k) + ") is not an integer", k);
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), denom.get_mpz_t());
    terms.push_back(std::move(q));
  }
  return terms;
}

std::vector<IntPoly> extend_sequence(const CFiniteRec& rec, std::vector<IntPoly> terms,
                                     long first_index, std::size_t count) {
  const long known_last = first_index + static_cast<long>(terms.size()) - 1;
  if (first_index > rec.start || known_last < rec.start + rec.order - 1) {
    throw InvalidInput("terms do not cover the recurrence's initial segment");
  }
  while (terms.size() < count) {
    const std::size_t k = terms.size();
    IntPoly next(rec.coeffs.front().var());
    for (std::size_t i = 1; i <= rec.coeffs.size(); ++i) next += rec.coeffs[i - 1] * terms[k - i];
    terms.push_back(std::move(next));
  }
  return terms;
}

std::vector<BigInt> extend_sequence(const CFiniteRec& rec, std::vector<BigInt> terms, long first_index,
                                    std::size_t count) {
  for (const auto& c : rec.coeffs) {
    if (c.degree() > 0) throw InvalidInput("scalar extension needs constant coefficients");
  }
  const long known_last = first_index + static_cast<long>(terms.size()) - 1;
  if (first_index > rec.start || known_last < rec.start + rec.order - 1) {
    throw InvalidInput("terms do not cover the recurrence's initial segment");
  }
  while (terms.size() < count) {
    const std::size_t k = terms.size();
    BigInt next = 0;
    for (std::size_t i = 1; i <= rec.coeffs.size(); ++i) next += rec.coeffs[i - 1].coeff(0) * terms[k - i];
    terms.push_back(std::move(next));
  }
  return terms;
}

RationalGF cfinite_to_gf(const CFiniteRec& rec, const std::vector<BigInt>& terms) {
  if (rec.start < 0) throw InvalidInput("generating functions need terms from index 0");
  const std::size_t prefix = static_cast<std::size_t>(rec.start + rec.order);
  if (terms.size() < prefix) throw InsufficientTerms("not enough terms for the numerator");
  std::vector<BigInt> q(static_cast<std::size_t>(rec.order) + 1);
  q[0] = 1;
  for (int i = 1; i <= rec.order; ++i) {
    const IntPoly& c = rec.coeffs[static_cast<std::size_t>(i - 1)];
    if (c.degree() > 0) throw InvalidInput("generating function needs constant coefficients");
    q[static_cast<std::size_t>(i)] = -c.coeff(0);
  }
  RationalGF gf;
  gf.denominator = IntPoly(std::move(q), 'x');
  IntPoly series(std::vector<BigInt>(terms.begin(), terms.begin() + static_cast<long>(prefix)), 'x');
  gf.numerator = (gf.denominator * series).truncated(prefix);
  return gf;
}

std::vector<BigInt> series_expand(const RationalGF& gf, std::size_t count) {
  if (gf.denominator.coeff(0) != 1) throw InvalidInput("denominator must have constant term 1");
  const auto& q = gf.denominator.coeffs();
  std::vector<BigInt> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    BigInt s = gf.numerator.coeff(k);
    for (std::size_t i = 1; i < q.size() && i <= k; ++i) s -= q[i] * out[k - i];
    out[k] = std::move(s);
  }
  return out;
}

}  // namespace menages
