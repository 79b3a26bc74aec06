#pragma once

// Forbidden-position boards and their rook polynomials.

#include <cstddef>
#include <cstdint>
#include <list>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "menages/exactmath.hpp"

namespace menages {

/// Square 0/1 matrix, row-major.
using Matrix01 = std::vector<std::vector<int>>;

/// Set of displacements pi(i) - i.
using DisplacementSet = std::set<int>;

/// An n x n board: rows()[i] holds the forbidden columns (1-based, ascending)
/// of row i + 1, i.e. the cells marked X.
class Board {
 public:
  Board() = default;
  /// Throws InvalidInput unless rows.size() == n and every column is in 1..n.
  Board(int n, std::vector<std::vector<int>> rows);

  int size() const noexcept { return n_; }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }
  /// 1-based indices.
  bool forbidden(int row, int col) const;
  std::size_t cell_count() const;

  friend bool operator==(const Board& a, const Board& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> rows_;
};

Board board_from_matrix(const Matrix01& m);
Matrix01 to_matrix(const Board& b);

/// X at (i, j) iff j - i is in S, 1 <= i, j <= n.
Board board_straight(const DisplacementSet& s, int n);

/// S shifted so that its minimum is 0. Empty stays empty.
DisplacementSet normalize_circular(const DisplacementSet& s);

/// X at (i, j) iff (j - i) mod n is in (S - min S) mod n.
Board board_circular(const DisplacementSet& s, int n);

/// Allowed-position matrix: 1 exactly where the board has no X.
Matrix01 complement_matrix(const Board& b);

/// Canonical encoding of a board up to row and column permutations.
///
/// Built by alternately sorting the rows and relabelling the columns by first
/// use until nothing changes; empty rows and columns are ignored. The result
/// is the encoding of an actual permutation of the board, so equal keys imply
/// equal rook polynomials (the converse need not hold).
struct BoardKey {
  std::string bytes;
  friend bool operator==(const BoardKey&, const BoardKey&) = default;
};

BoardKey board_key(const Board& b);

enum class BranchRule {
  /// Branch on a cell of the row or column with the fewest X's
  /// (rows before columns, then lowest index).
  kFewestOnes,
  /// Branch on the first X of the top row; if the top row is empty, on the
  /// first X of the first column; if both are empty, delete both.
  kFirstRow,
};

struct RookStats {
  std::uint64_t nodes = 0;   // recursion calls that reached the cache
  std::uint64_t hits = 0;
  std::uint64_t evictions = 0;
};

/// Memo table for rook polynomials keyed by BoardKey, with optional LRU cap
/// (0 = unbounded). Not thread-safe: give each thread its own cache.
class RookCache {
 public:
  explicit RookCache(std::size_t capacity = 0) : capacity_(capacity) {}

  const IntPoly* find(const std::string& key);
  void insert(const std::string& key, const IntPoly& value);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  const RookStats& stats() const noexcept { return stats_; }
  RookStats& stats() noexcept { return stats_; }
  void clear();

 private:
  struct Entry {
    IntPoly value;
    std::list<std::string>::iterator order;
  };
  std::size_t capacity_;
  std::unordered_map<std::string, Entry> map_;
  std::list<std::string> lru_;  // front = most recent; maintained only when capped
  RookStats stats_;
};

/// Rook polynomial in t: coefficient k counts placements of k non-attacking
/// rooks on the X cells. Uses the place/don't-place recursion
/// R_B = R_{B without the cell} + t * R_{B without its row and column}.
IntPoly rook_polynomial(const Board& b, RookCache& cache,
                        BranchRule rule = BranchRule::kFewestOnes);
IntPoly rook_polynomial(const Board& b, BranchRule rule = BranchRule::kFewestOnes);

/// One step of the first-row recursion on the actual matrix, for tracing.
struct RecursionStep {
  enum class Kind { kEmpty, kRow, kColumn, kDeleteBoth };
  Kind kind = Kind::kEmpty;
  int row = 0;  // 1-based cell the step acted on
  int col = 0;
  Board without;  // rook not placed (cell cleared); for kDeleteBoth the reduced board
  Board with;     // rook placed: row and column deleted, (n-1) x (n-1)
};

RecursionStep first_row_step(const Board& b);

}  // namespace menages
