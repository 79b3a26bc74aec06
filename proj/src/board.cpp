#include "menages/board.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

#include "menages/errors.hpp"

namespace menages {

Board::Board(int n, std::vector<std::vector<int>> rows) : n_(n), rows_(std::move(rows)) {
  if (n < 0) throw InvalidInput("board side must be non-negative");
  if (static_cast<int>(rows_.size()) != n) throw InvalidInput("board must have exactly n rows");
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (int c : row) {
      if (c < 1 || c > n) throw InvalidInput("board column out of range: " + std::to_string(c));
    }
  }
}

bool Board::forbidden(int row, int col) const {
  if (row < 1 || row > n_) return false;
  const auto& r = rows_[static_cast<std::size_t>(row - 1)];
  return std::binary_search(r.begin(), r.end(), col);
}

std::size_t Board::cell_count() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

Board board_from_matrix(const Matrix01& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<int>> rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw InvalidInput("board matrix is not square");
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] != 0 && m[i][j] != 1) throw InvalidInput("board matrix entries must be 0 or 1");
      if (m[i][j] == 1) rows[i].push_back(static_cast<int>(j) + 1);
    }
  }
  return Board(n, std::move(rows));
}

Matrix01 to_matrix(const Board& b) {
  const auto n = static_cast<std::size_t>(b.size());
  Matrix01 m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (int c : b.rows()[i]) m[i][static_cast<std::size_t>(c - 1)] = 1;
  return m;
}

Board board_straight(const DisplacementSet& s, int n) {
  if (n < 0) throw InvalidInput("board side must be non-negative");
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    for (int d : s) {
      long j = static_cast<long>(i) + d;
      if (j >= 1 && j <= n) rows[static_cast<std::size_t>(i - 1)].push_back(static_cast<int>(j));
    }
  }
  return Board(n, std::move(rows));
}

DisplacementSet normalize_circular(const DisplacementSet& s) {
  if (s.empty()) return s;
  const int lo = *s.begin();
  DisplacementSet out;
  for (int d : s) out.insert(d - lo);
  return out;
}

Board board_circular(const DisplacementSet& s, int n) {
  if (n < 0) throw InvalidInput("board side must be non-negative");
  if (n == 0) return Board();
  std::set<int> residues;
  for (int d : normalize_circular(s)) residues.insert(((d % n) + n) % n);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    for (int r : residues) {
      int j = (i - 1 + r) % n + 1;
      rows[static_cast<std::size_t>(i - 1)].push_back(j);
    }
  }
  return Board(n, std::move(rows));
}

Matrix01 complement_matrix(const Board& b) {
  Matrix01 m = to_matrix(b);
  for (auto& row : m)
    for (auto& x : row) x = 1 - x;
  return m;
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

using Rows = std::vector<std::vector<int>>;

constexpr int kMaxCanonicalPasses = 16;

// Nonempty rows, columns relabelled by first use, rows sorted; repeated until
// a fixpoint (or the pass limit, which still yields a valid permutation).
Rows canonical_rows(const Rows& in) {
  Rows cur;
  cur.reserve(in.size());
  int max_label = 0;
  for (const auto& r : in) {
    if (r.empty()) continue;
    cur.push_back(r);
    max_label = std::max(max_label, r.back());
  }
  std::sort(cur.begin(), cur.end());
  std::vector<int> relabel;
  for (int pass = 0; pass < kMaxCanonicalPasses; ++pass) {
    relabel.assign(static_cast<std::size_t>(max_label) + 1, -1);
    int next = 0;
    for (const auto& r : cur)
      for (int c : r)
        if (relabel[static_cast<std::size_t>(c)] < 0) relabel[static_cast<std::size_t>(c)] = next++;
    Rows out = cur;
    for (auto& r : out) {
      for (int& c : r) c = relabel[static_cast<std::size_t>(c)];
      std::sort(r.begin(), r.end());
    }
    std::sort(out.begin(), out.end());
    max_label = std::max(next - 1, 0);
    if (out == cur) break;
    cur = std::move(out);
  }
  return cur;
}

std::string encode(const Rows& rows) {
  std::string key;
  for (const auto& r : rows) {
    for (int c : r) {
      key.push_back(static_cast<char>(c & 0xff));
      key.push_back(static_cast<char>((c >> 8) & 0xff));
    }
    key.push_back('\xff');
    key.push_back('\xff');
  }
  return key;
}

std::string key_of(const Rows& rows) { return encode(canonical_rows(rows)); }

}  // namespace

BoardKey board_key(const Board& b) { return BoardKey{key_of(b.rows())}; }

// ---------------------------------------------------------------------------
// Cache

const IntPoly* RookCache::find(const std::string& key) {
  auto it = map_.find(key);
  if (it == map_.end()) return nullptr;
  ++stats_.hits;
  if (capacity_ != 0) lru_.splice(lru_.begin(), lru_, it->second.order);
  return &it->second.value;
}

void RookCache::insert(const std::string& key, const IntPoly& value) {
  if (map_.count(key)) return;
  if (capacity_ != 0) {
    while (map_.size() >= capacity_ && !lru_.empty()) {
      map_.erase(lru_.back());
      lru_.pop_back();
      ++stats_.evictions;
    }
    lru_.push_front(key);
    map_.emplace(key, Entry{value, lru_.begin()});
  } else {
    map_.emplace(key, Entry{value, lru_.end()});
  }
}

void RookCache::clear() {
  map_.clear();
  lru_.clear();
  stats_ = {};
}

// ---------------------------------------------------------------------------
// Recursion

namespace {

const IntPoly& t_poly() {
  static const IntPoly t = IntPoly({0, 1}, 't');
  return t;
}

void erase_value(std::vector<int>& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col);
  if (it != row.end() && *it == col) row.erase(it);
}

bool has_cells(const Rows& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.empty(); });
}

class Recursion {
 public:
  Recursion(RookCache& cache, BranchRule rule) : cache_(cache), rule_(rule) {}

  IntPoly run(Rows rows, std::vector<int> cols) {
    return rule_ == BranchRule::kFirstRow ? first_row(std::move(rows), std::move(cols))
                                          : fewest(std::move(rows));
  }

 private:
  static std::size_t count_nonempty(const Rows& rows) {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.empty(); }));
  }

  // Boards with at most one nonempty row are closed-form: 1 + k t.
  static std::optional<IntPoly> trivial(const Rows& rows) {
    std::size_t nonempty = 0, cells = 0;
    for (const auto& r : rows) {
      if (r.empty()) continue;
      ++nonempty;
      cells += r.size();
      if (nonempty > 1) return std::nullopt;
    }
    return IntPoly({1, static_cast<long>(cells)}, 't');
  }

  // Cell (row index, column label) with the fewest-ones rule.
  static std::pair<std::size_t, int> pick_fewest(const Rows& rows) {
    std::size_t best_row = 0, best_row_len = SIZE_MAX;
    int max_label = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() < best_row_len) {
        best_row_len = rows[i].size();
        best_row = i;
      }
      max_label = std::max(max_label, rows[i].back());
    }
    std::vector<std::size_t> col_count(static_cast<std::size_t>(max_label) + 1, 0);
    for (const auto& r : rows)
      for (int c : r) ++col_count[static_cast<std::size_t>(c)];
    std::size_t best_col_len = SIZE_MAX;
    int best_col = -1;
    for (std::size_t c = 0; c < col_count.size(); ++c) {
      if (col_count[c] != 0 && col_count[c] < best_col_len) {
        best_col_len = col_count[c];
        best_col = static_cast<int>(c);
      }
    }
    if (best_row_len <= best_col_len) return {best_row, rows[best_row].front()};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (std::binary_search(rows[i].begin(), rows[i].end(), best_col)) return {i, best_col};
    }
    return {best_row, rows[best_row].front()};  // unreachable
  }

  IntPoly fewest(Rows rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const auto& r) { return r.empty(); }),
               rows.end());
    if (auto p = trivial(rows)) return *p;
    std::string key = key_of(rows);
    ++cache_.stats().nodes;
    if (const IntPoly* hit = cache_.find(key)) return *hit;

    auto [ri, col] = pick_fewest(rows);
    Rows without = rows;
    erase_value(without[ri], col);
    Rows with;
    with.reserve(rows.size() - 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == ri) continue;
      with.push_back(rows[i]);
      erase_value(with.back(), col);
    }
    IntPoly result = fewest(std::move(without)) + t_poly() * fewest(std::move(with));
    cache_.insert(key, result);
    return result;
  }

  // Rows keep their matrix order and may be empty; cols lists the live
  // columns in order, so "first row" and "first column" mean what they mean
  // on the matrix.
  IntPoly first_row(Rows rows, std::vector<int> cols) {
    if (!has_cells(rows)) return IntPoly::constant(1, 't');
    if (count_nonempty(rows) == 1) return *trivial(rows);
    std::string key = key_of(rows);
    ++cache_.stats().nodes;
    if (const IntPoly* hit = cache_.find(key)) return *hit;

    IntPoly result;
    if (!rows.front().empty()) {
      result = place_or_not(rows, cols, 0, rows.front().front());
    } else {
      const int c = cols.front();
      std::size_t ri = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::binary_search(rows[i].begin(), rows[i].end(), c)) {
          ri = i;
          break;
        }
      }
      if (ri < rows.size()) {
        result = place_or_not(rows, cols, ri, c);
      } else {
        rows.erase(rows.begin());
        cols.erase(cols.begin());
        result = first_row(std::move(rows), std::move(cols));
      }
    }
    cache_.insert(key, result);
    return result;
  }

  IntPoly place_or_not(const Rows& rows, const std::vector<int>& cols, std::size_t ri, int col) {
    Rows without = rows;
    erase_value(without[ri], col);
    Rows with;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == ri) continue;
      with.push_back(rows[i]);
      erase_value(with.back(), col);
    }
    std::vector<int> with_cols = cols;
    erase_value(with_cols, col);
    return first_row(std::move(without), cols) + t_poly() * first_row(std::move(with), std::move(with_cols));
  }

  RookCache& cache_;
  BranchRule rule_;
};

// Deletes 1-based row r and column c from an n x n board.
Board delete_row_col(const Board& b, int r, int c) {
  std::vector<std::vector<int>> rows;
  for (int i = 1; i <= b.size(); ++i) {
    if (i == r) continue;
    std::vector<int> row;
    for (int j : b.rows()[static_cast<std::size_t>(i - 1)]) {
      if (j == c) continue;
      row.push_back(j > c ? j - 1 : j);
    }
    rows.push_back(std::move(row));
  }
  return Board(b.size() - 1, std::move(rows));
}

Board clear_cell(const Board& b, int r, int c) {
  auto rows = b.rows();
  erase_value(rows[static_cast<std::size_t>(r - 1)], c);
  return Board(b.size(), std::move(rows));
}

}  // namespace

IntPoly rook_polynomial(const Board& b, RookCache& cache, BranchRule rule) {
  std::vector<int> cols(static_cast<std::size_t>(b.size()));
  for (int j = 0; j < b.size(); ++j) cols[static_cast<std::size_t>(j)] = j + 1;
  return Recursion(cache, rule).run(b.rows(), std::move(cols));
}

IntPoly rook_polynomial(const Board& b, BranchRule rule) {
  RookCache cache;
  return rook_polynomial(b, cache, rule);
}

RecursionStep first_row_step(const Board& b) {
  RecursionStep step;
  if (b.cell_count() == 0) return step;
  const auto& top = b.rows().front();
  if (!top.empty()) {
    step.kind = RecursionStep::Kind::kRow;
    step.row = 1;
    step.col = top.front();
  } else {
    for (int i = 1; i <= b.size(); ++i) {
      if (b.forbidden(i, 1)) {
        step.kind = RecursionStep::Kind::kColumn;
        step.row = i;
        step.col = 1;
        break;
      }
    }
    if (step.kind != RecursionStep::Kind::kColumn) {
      step.kind = RecursionStep::Kind::kDeleteBoth;
      step.row = 1;
      step.col = 1;
      step.without = delete_row_col(b, 1, 1);
      return step;
    }
  }
  step.without = clear_cell(b, step.row, step.col);
  step.with = delete_row_col(b, step.row, step.col);
  return step;
}

}  // namespace menages
