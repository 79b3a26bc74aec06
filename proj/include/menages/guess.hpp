#pragma once

// Guess-then-verify fitting of recurrences.
//
// Every guesser fits on one block of indices and then requires the candidate
// to hold on the `held_out` terms that follow it; the two index sets never
// overlap. A returned recurrence is therefore empirical with high confidence,
// not a proof.

#include <optional>
#include <vector>

#include "menages/exactmath.hpp"

namespace menages {

/// R_n = sum_{i=1..d} c_i(t) R_{n-i}, coefficients constant in n.
///
/// initial[k] is the term with index start + k; the recurrence holds for
/// every known index n >= start + order.
struct CFiniteRec {
  int order = 0;
  std::vector<IntPoly> coeffs;   // c_1 .. c_d
  std::vector<IntPoly> initial;  // d terms
  long start = 1;

  /// Largest t-degree among the coefficients.
  int degree() const;
  friend bool operator==(const CFiniteRec&, const CFiniteRec&) = default;
};

/// sum_{i=0..d} p_i(n) a(n+i) = 0 for every n >= valid_from with known terms.
///
/// Coefficients are integer polynomials in n, jointly content-free, with the
/// leading coefficient of p_d positive. initial holds a(valid_from) ..
/// a(valid_from + d - 1).
struct HolonomicRec {
  int order = 0;
  int degree = 0;
  std::vector<IntPoly> coeffs;  // p_0 .. p_d, variable 'n'
  std::vector<BigInt> initial;
  long valid_from = 1;

  int complexity() const { return order + degree; }
  friend bool operator==(const HolonomicRec&, const HolonomicRec&) = default;
};

/// numerator / denominator in x with denominator(0) = 1.
struct RationalGF {
  IntPoly numerator{'x'};
  IntPoly denominator{'x'};
  friend bool operator==(const RationalGF&, const RationalGF&) = default;
};

struct GuessOptions {
  int held_out = 10;
  /// Index of the first term passed in (1 for a(1), a(2), ...).
  long first_index = 1;
  /// Extra fitting rows beyond the number of unknowns, when available.
  int margin = 4;
};

/// Terms required by the guessers for a given budget.
std::size_t cfinite_terms_needed(int max_order, int max_tdeg, int held_out);
std::size_t holonomic_terms_needed(int max_complexity, int held_out, int max_degree = -1);

/// Smallest-order C-finite recurrence for a sequence of polynomials in t,
/// with coefficient t-degree <= max_tdeg. Requires
/// terms.size() >= 2 * max_order + max_tdeg + held_out.
std::optional<CFiniteRec> guess_cfinite_poly(const std::vector<IntPoly>& terms, int max_order,
                                             int max_tdeg, const GuessOptions& opts = {});

/// Constant-coefficient recurrence for an integer sequence.
/// Requires terms.size() >= 2 * max_order + held_out.
std::optional<CFiniteRec> guess_cfinite_scalar(const std::vector<BigInt>& terms, int max_order,
                                               const GuessOptions& opts = {});

/// Holonomic recurrence with order + degree <= max_complexity, trying order
/// d = 1, 2, ... and for each d degree D = 0, 1, ...; max_degree (if >= 0)
/// additionally caps D. Requires terms.size() >= (d+1)(D+1) + d + held_out
/// for the largest pair in the search.
std::optional<HolonomicRec> guess_holonomic(const std::vector<BigInt>& terms, int max_complexity,
                                            const GuessOptions& opts = {}, int max_degree = -1);

/// True iff the recurrence holds at every index n >= from_n that the terms
/// (first term has index first_index) let us check. Vacuously true otherwise.
bool check_recurrence(const CFiniteRec& rec, const std::vector<IntPoly>& terms, long first_index,
                      long from_n);
bool check_recurrence(const CFiniteRec& rec, const std::vector<BigInt>& terms, long first_index,
                      long from_n);
bool check_recurrence(const HolonomicRec& rec, const std::vector<BigInt>& terms, long first_index,
                      long from_n);

/// Extends terms (starting at first_index) to count terms in total. The known
/// terms must reach at least index start + order - 1 (valid_from + order - 1).
/// Holonomic extension throws SingularRecurrence when p_d vanishes and
/// NonIntegralExtension when the division leaves a remainder.
std::vector<BigInt> extend_sequence(const HolonomicRec& rec, std::vector<BigInt> terms,
                                    long first_index, std::size_t count);
std::vector<BigInt> extend_sequence(const CFiniteRec& rec, std::vector<BigInt> terms,
                                    long first_index, std::size_t count);
std::vector<IntPoly> extend_sequence(const CFiniteRec& rec, std::vector<IntPoly> terms,
                                     long first_index, std::size_t count);

/// P/Q for a scalar C-finite recurrence: Q = 1 - sum c_i x^i and P is Q times
/// the series of terms, truncated below degree start + order. terms[k] is
/// a(k), so they must start at index 0 (rec.start >= 0).
RationalGF cfinite_to_gf(const CFiniteRec& rec, const std::vector<BigInt>& terms);

/// First count coefficients of P/Q by power-series division.
std::vector<BigInt> series_expand(const RationalGF& gf, std::size_t count);

}  // namespace menages
