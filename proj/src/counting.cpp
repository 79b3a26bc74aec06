#include "menages/counting.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <unordered_map>

#include "menages/errors.hpp"

namespace menages {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kStraight: return "straight";
    case Mode::kCircular: return "circular";
    case Mode::kAllowed: return "allowed";
  }
  return "?";
}

BigInt factorial(unsigned n) {
  static std::mutex mu;
  static std::vector<BigInt> table{BigInt(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[n];
}

SinsWeight sins_weight(int k, int n) {
  if (k < 0 || k > n) throw InvalidInput("sins weight needs 0 <= k <= n");
  BigInt w = factorial(static_cast<unsigned>(n - k));
  if (k % 2) w = -w;
  return {k, w};
}

BigInt permanent(const Matrix01& m, int cap) {
  constexpr int kHardCap = 26;
  const int n = static_cast<int>(m.size());
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("permanent of a non-square matrix");
  }
  if (n > cap || n > kHardCap) {
    throw CapExceeded("matrix side " + std::to_string(n) + " exceeds the permanent cap " +
                      std::to_string(std::min(cap, kHardCap)) + "; use the rook-polynomial path");
  }
  if (n == 0) return 1;

  using u128 = unsigned __int128;
  // Flush threshold keeps one more addition from overflowing.
  const u128 flush_at = static_cast<u128>(1) << 126;
  std::vector<int> row_sum(static_cast<std::size_t>(n), 0);
  u128 plus = 0, minus = 0;
  BigInt total = 0;
  auto flush = [&] {
    auto to_big = [](u128 x) {
      BigInt hi = static_cast<unsigned long>(x >> 64);
      BigInt lo = static_cast<unsigned long>(x & ~std::uint64_t{0});
      return BigInt((hi << 64) + lo);
    };
    total += to_big(plus);
    total -= to_big(minus);
    plus = minus = 0;
  };

  // Subset k (k = 1 .. 2^n - 1) in Gray-code order: g = k ^ (k >> 1); the
  // flipped column is the lowest set bit of k.
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    int col = __builtin_ctzll(k);
    std::uint64_t bit = std::uint64_t{1} << col;
    int delta = (gray & bit) ? -1 : 1;
    gray ^= bit;
    for (int i = 0; i < n; ++i) {
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]) row_sum[static_cast<std::size_t>(i)] += delta;
    }
    u128 prod = 1;
    for (int i = 0; i < n && prod; ++i) prod *= static_cast<u128>(row_sum[static_cast<std::size_t>(i)]);
    if (!prod) continue;
    // Sign (-1)^(n - |subset|).
    bool negative = ((n - __builtin_popcountll(gray)) & 1) != 0;
    (negative ? minus : plus) += prod;
    if (plus >= flush_at || minus >= flush_at) flush();
  }
  flush();
  return total;
}

BigInt umbral_count(const IntPoly& r, int n) {
  if (n < 0) throw InvalidInput("umbral count needs n >= 0");
  if (r.degree() > n) {
    throw InvalidInput("rook polynomial of degree " + std::to_string(r.degree()) +
                       " cannot come from a board of side " + std::to_string(n));
  }
  BigInt total = 0;
  for (int k = 0; k <= r.degree(); ++k) {
    const BigInt& c = r.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    total += c * sins_weight(k, n).weight;
  }
  return total;
}

Board board_for(const DisplacementSet& s, int n, Mode mode) {
  switch (mode) {
    case Mode::kStraight: return board_straight(s, n);
    case Mode::kCircular: return board_circular(s, n);
    case Mode::kAllowed: break;
  }
  throw InvalidInput("allowed-displacement counts have no forbidden board; use count_allowed");
}

BigInt count(const CountRequest& req, RookCache& cache, const Limits& limits) {
  if (req.n < 0) throw InvalidInput("n must be non-negative");
  if (req.mode == Mode::kAllowed) return count_allowed(req.s, req.n, limits.window_cap);
  Board b = board_for(req.s, req.n, req.mode);
  return umbral_count(rook_polynomial(b, cache), req.n);
}

BigInt count(const CountRequest& req, const Limits& limits) {
  RookCache cache;
  return count(req, cache, limits);
}

BigInt count_allowed(const DisplacementSet& s, int n, int window_cap) {
  if (s.empty()) throw InvalidInput("allowed-displacement set must be nonempty");
  if (n < 0) throw InvalidInput("n must be non-negative");
  if (n == 0) return 1;
  const long lo = *s.begin(), hi = *s.rbegin();
  const long width = hi - lo + 1;
  if (width > window_cap || width > 62) {
    throw CapExceeded("displacement window " + std::to_string(width) + " exceeds the cap " +
                      std::to_string(std::min(window_cap, 62)));
  }
  // Displacements sum to zero, so all-positive or all-negative sets are empty.
  if (lo > 0 || hi < 0) return 0;

  using Mask = std::uint64_t;
  const Mask full = (Mask{1} << width) - 1;
  auto outside = [n](long col) { return col < 1 || col > n; };

  // Bit b of a state <-> column i + lo + b is taken (or does not exist).
  Mask start = 0;
  for (long b = 0; b < width; ++b)
    if (outside(1 + lo + b)) start |= Mask{1} << b;

  std::unordered_map<Mask, BigInt> cur{{start, BigInt(1)}}, next;
  for (long i = 1; i <= n; ++i) {
    next.clear();
    const Mask top = outside(i + 1 + hi) ? Mask{1} << (width - 1) : 0;
    for (const auto& [state, ways] : cur) {
      for (int d : s) {
        Mask bit = Mask{1} << (d - lo);
        if (state & bit) continue;
        Mask placed = state | bit;
        if (!(placed & 1)) continue;  // column i + lo would be left empty
        next[(placed >> 1) | top] += ways;
      }
    }
    cur.swap(next);
  }
  auto it = cur.find(full);
  return it == cur.end() ? BigInt(0) : it->second;
}

BigInt touchard(int n) {
  if (n < 3) throw InvalidInput("Touchard's formula is used for n >= 3 only");
  BigInt total = 0, binom;
  for (int k = 0; k <= n; ++k) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * n - k), static_cast<unsigned long>(k));
    BigInt term = BigInt(2 * n) * binom;
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(2 * n - k));
    term *= factorial(static_cast<unsigned>(n - k));
    if (k % 2) total -= term;
    else total += term;
  }
  return total;
}

std::vector<BigInt> seq(const DisplacementSet& s, int count_terms, Mode mode, RookCache& cache,
                        const Limits& limits) {
  if (count_terms < 1) throw InvalidInput("number of terms must be at least 1");
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(count_terms));
  for (int n = 1; n <= count_terms; ++n) out.push_back(count({s, n, mode}, cache, limits));
  return out;
}

std::vector<BigInt> seq(const DisplacementSet& s, int count_terms, Mode mode, const Limits& limits) {
  RookCache cache;
  return seq(s, count_terms, mode, cache, limits);
}

std::vector<IntPoly> rook_sequence(const DisplacementSet& s, int first, int last, Mode mode,
                                   RookCache& cache) {
  std::vector<IntPoly> out;
  for (int n = first; n <= last; ++n) out.push_back(rook_polynomial(board_for(s, n, mode), cache));
  return out;
}

}  // namespace menages
