#pragma once

// From boards to permutation counts.

#include <vector>

#include "menages/board.hpp"
#include "menages/exactmath.hpp"

namespace menages {

enum class Mode {
  kStraight,  // pi(i) - i not in S
  kCircular,  // (pi(i) - i) mod n not in S
  kAllowed,   // pi(i) - i in S
};

const char* mode_name(Mode m);

struct CountRequest {
  DisplacementSet s;
  int n = 0;
  Mode mode = Mode::kStraight;
};

struct Limits {
  int permanent_cap = 22;  // largest matrix side for permanent()
  int window_cap = 24;     // largest max S - min S + 1 for count_allowed()
};

/// n!, from a process-wide table grown on demand (thread-safe).
BigInt factorial(unsigned n);

/// Inclusion-exclusion weight of a compatible set of k sins on an n-board.
struct SinsWeight {
  int k = 0;
  BigInt weight;  // (-1)^k (n-k)!
};
SinsWeight sins_weight(int k, int n);

/// Ryser's formula with Gray-code subset order. Throws CapExceeded past the
/// cap (hard limit 26, the largest side whose row-sum products fit in 128 bits).
BigInt permanent(const Matrix01& m, int cap = Limits{}.permanent_cap);

/// Sum over k of r_k (-1)^k (n-k)!. Throws InvalidInput if deg r > n.
BigInt umbral_count(const IntPoly& r, int n);

/// Board for S at size n in straight or circular mode.
Board board_for(const DisplacementSet& s, int n, Mode mode);

BigInt count(const CountRequest& req, RookCache& cache, const Limits& limits = {});
BigInt count(const CountRequest& req, const Limits& limits = {});

/// Permutations with every displacement in S, by a profile DP over the
/// occupancy of the column window [i + min S, i + max S].
/// count_allowed(S, 0) = 1.
BigInt count_allowed(const DisplacementSet& s, int n, int window_cap = Limits{}.window_cap);

/// Touchard's closed form for the round-table menage numbers; n >= 3.
BigInt touchard(int n);

/// [count(S, n, mode) for n = 1..N], sharing one rook cache.
std::vector<BigInt> seq(const DisplacementSet& s, int count_terms, Mode mode, RookCache& cache,
                        const Limits& limits = {});
std::vector<BigInt> seq(const DisplacementSet& s, int count_terms, Mode mode,
                        const Limits& limits = {});

/// Rook polynomials of board_for(S, n, mode) for n = first..last.
std::vector<IntPoly> rook_sequence(const DisplacementSet& s, int first, int last, Mode mode,
                                   RookCache& cache);

}  // namespace menages
