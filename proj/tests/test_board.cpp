#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "menages/board.hpp"
#include "menages/errors.hpp"

using namespace menages;

namespace {

const Matrix01 kB = {
    {1, 0, 0, 1, 1}, {0, 0, 1, 1, 0}, {1, 0, 1, 1, 0}, {0, 1, 1, 0, 1}, {1, 0, 0, 1, 1},
};

Matrix01 identity(int n) {
  Matrix01 m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

IntPoly from_oracle(const Matrix01& m) {
  auto r = oracle::rook_numbers(m);
  return IntPoly(std::vector<BigInt>(r.begin(), r.end()));
}

Matrix01 permuted(const Matrix01& m, const std::vector<int>& rp, const std::vector<int>& cp) {
  Matrix01 out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      out[i][j] = m[static_cast<std::size_t>(rp[i])][static_cast<std::size_t>(cp[j])];
  return out;
}

}  // namespace

TEST_CASE("board_from_matrix") {
  Board b = board_from_matrix(kB);
  CHECK(b.size() == 5);
  CHECK(b.rows() == std::vector<std::vector<int>>{{1, 4, 5}, {3, 4}, {1, 3, 4}, {2, 3, 5}, {1, 4, 5}});
  CHECK(board_from_matrix({}).size() == 0);
  CHECK(board_from_matrix(identity(2)).rows() == std::vector<std::vector<int>>{{1}, {2}});
  CHECK_THROWS_AS(board_from_matrix({{1, 0}, {0}}), InvalidInput);
  CHECK_THROWS_AS(board_from_matrix({{1, 0}}), InvalidInput);
  CHECK(to_matrix(b) == kB);
}

TEST_CASE("board constructor validates") {
  CHECK_THROWS_AS(Board(2, {{1}, {3}}), InvalidInput);
  CHECK_THROWS_AS(Board(2, {{1}}), InvalidInput);
  CHECK(Board(2, {{2, 1}, {}}).rows().front() == std::vector<int>{1, 2});
}

TEST_CASE("board_straight") {
  CHECK(to_matrix(board_straight({0}, 3)) == identity(3));
  Board m1 = board_straight({0, 1}, 4);
  CHECK(m1.rows() == std::vector<std::vector<int>>{{1, 2}, {2, 3}, {3, 4}, {4}});
  CHECK(board_straight({5}, 3).cell_count() == 0);
  Board neg = board_straight({-1}, 3);
  CHECK(neg.rows() == std::vector<std::vector<int>>{{}, {1}, {2}});
}

TEST_CASE("board_circular") {
  Board m2 = board_circular({0, 1}, 4);
  CHECK(m2.rows() == std::vector<std::vector<int>>{{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  CHECK(m2.forbidden(4, 1));
  CHECK(to_matrix(board_circular({0}, 3)) == identity(3));
  CHECK(board_circular({0, 1, 2}, 3).cell_count() == 9);
  CHECK(board_circular({0, 4}, 4) == board_circular({0}, 4));
  CHECK(normalize_circular({-2, 3}) == DisplacementSet{0, 5});
  CHECK(normalize_circular({}).empty());
}

TEST_CASE("circular boards are shift invariant") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-6, 6), shift(-20, 20), side(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    DisplacementSet s;
    for (int k = 0; k < 3; ++k) s.insert(d(rng));
    const int c = shift(rng), n = side(rng);
    DisplacementSet t;
    for (int x : s) t.insert(x + c);
    CHECK(board_circular(s, n) == board_circular(t, n));
  }
}

TEST_CASE("complement_matrix") {
  Matrix01 p = {{0, 1, 1, 0, 0}, {1, 1, 0, 0, 1}, {0, 1, 0, 0, 1}, {1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}};
  CHECK(complement_matrix(board_from_matrix(kB)) == p);
  CHECK(complement_matrix(Board(2, {{}, {}})) == Matrix01{{1, 1}, {1, 1}});
  CHECK(complement_matrix(Board(2, {{1, 2}, {1, 2}})) == Matrix01{{0, 0}, {0, 0}});
}

TEST_CASE("rook_polynomial examples") {
  const IntPoly expected{1, 14, 63, 105, 56, 6};
  CHECK(rook_polynomial(board_from_matrix(kB)) == expected);
  CHECK(rook_polynomial(board_from_matrix(kB), BranchRule::kFirstRow) == expected);
  for (int n = 0; n <= 12; ++n) {
    CHECK(rook_polynomial(board_straight({0}, n)) == poly_pow({1, 1}, static_cast<unsigned>(n)));
  }
  CHECK(rook_polynomial(Board(4, {{}, {}, {}, {}})) == IntPoly{1});
  CHECK(rook_polynomial(Board()) == IntPoly{1});
}

TEST_CASE("first_row_step reproduces the place/don't-place split") {
  Board b = board_from_matrix(kB);
  RecursionStep step = first_row_step(b);
  CHECK(step.kind == RecursionStep::Kind::kRow);
  CHECK(step.row == 1);
  CHECK(step.col == 1);
  Matrix01 b1 = kB;
  b1[0][0] = 0;
  CHECK(to_matrix(step.without) == b1);
  CHECK(to_matrix(step.with) == Matrix01{{0, 1, 1, 0}, {0, 1, 1, 0}, {1, 1, 0, 1}, {0, 0, 1, 1}});
  CHECK(rook_polynomial(b) == rook_polynomial(step.without) + IntPoly{0, 1} * rook_polynomial(step.with));

  // Empty top row: branch on the first column.
  Board col = board_from_matrix({{0, 0, 0}, {0, 1, 0}, {1, 0, 1}});
  RecursionStep s2 = first_row_step(col);
  CHECK(s2.kind == RecursionStep::Kind::kColumn);
  CHECK(s2.row == 3);
  CHECK(s2.col == 1);
  CHECK(to_matrix(s2.with) == Matrix01{{0, 0}, {1, 0}});

  // Empty top row and first column: delete both.
  Board both = board_from_matrix({{0, 0, 0}, {0, 1, 1}, {0, 0, 1}});
  RecursionStep s3 = first_row_step(both);
  CHECK(s3.kind == RecursionStep::Kind::kDeleteBoth);
  CHECK(to_matrix(s3.without) == Matrix01{{1, 1}, {0, 1}});
  CHECK(rook_polynomial(both) == rook_polynomial(s3.without));

  CHECK(first_row_step(Board(2, {{}, {}})).kind == RecursionStep::Kind::kEmpty);
}

TEST_CASE("rook coefficients match brute force on random boards") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> side(0, 6);
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  int boards = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = side(rng);
    Matrix01 m = oracle::random_grid(rng, n, dens(rng));
    Board b = board_from_matrix(m);
    const IntPoly want = from_oracle(m);
    CHECK(rook_polynomial(b) == want);
    CHECK(rook_polynomial(b, BranchRule::kFirstRow) == want);
    ++boards;
  }
  CHECK(boards >= 200);
}

TEST_CASE("rook polynomial invariants") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> side(1, 7);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = side(rng);
    Matrix01 m = oracle::random_grid(rng, n, 0.4);
    Board b = board_from_matrix(m);
    IntPoly r = rook_polynomial(b);
    CHECK(r.coeff(0) == 1);
    CHECK(r.coeff(1) == static_cast<long>(b.cell_count()));
    int rows = 0, cols = 0;
    for (int i = 1; i <= n; ++i) {
      bool rr = false, cc = false;
      for (int j = 1; j <= n; ++j) {
        rr = rr || b.forbidden(i, j);
        cc = cc || b.forbidden(j, i);
      }
      rows += rr;
      cols += cc;
    }
    CHECK(r.degree() <= std::min(rows, cols));

    std::vector<int> rp(static_cast<std::size_t>(n)), cp(static_cast<std::size_t>(n));
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    Board pb = board_from_matrix(permuted(m, rp, cp));
    CHECK(rook_polynomial(pb) == r);
    // Keys are canonical under row order; column relabelling is only heuristic.
    std::vector<int> same(static_cast<std::size_t>(n));
    std::iota(same.begin(), same.end(), 0);
    CHECK(board_key(board_from_matrix(permuted(m, rp, same))) == board_key(b));
  }
}

TEST_CASE("block diagonal boards multiply") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> side(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int a = side(rng), c = side(rng);
    Matrix01 m1 = oracle::random_grid(rng, a, 0.5), m2 = oracle::random_grid(rng, c, 0.5);
    Matrix01 m(static_cast<std::size_t>(a + c), std::vector<int>(static_cast<std::size_t>(a + c)));
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j)
        m[static_cast<std::size_t>(a + i)][static_cast<std::size_t>(a + j)] = m2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    CHECK(rook_polynomial(board_from_matrix(m)) ==
          rook_polynomial(board_from_matrix(m1)) * rook_polynomial(board_from_matrix(m2)));
  }
}

TEST_CASE("board_key ignores empty lines and relabelling") {
  Board a(3, {{1, 2}, {}, {2}});
  Board b(4, {{}, {3}, {}, {1, 3}});
  CHECK(board_key(a) == board_key(b));
  CHECK_FALSE(board_key(a) == board_key(Board(2, {{1, 2}, {1, 2}})));
}

TEST_CASE("RookCache") {
  RookCache lru(2);
  lru.insert("a", IntPoly{1});
  lru.insert("b", IntPoly{2});
  REQUIRE(lru.find("a") != nullptr);
  lru.insert("c", IntPoly{3});
  CHECK(lru.size() == 2);
  CHECK(lru.find("b") == nullptr);
  CHECK(*lru.find("a") == IntPoly{1});
  CHECK(*lru.find("c") == IntPoly{3});
  CHECK(lru.stats().evictions == 1);

  // A tiny cap changes the work, never the answer.
  RookCache tiny(3), big;
  Board b = board_circular({0, 1, 2}, 9);
  CHECK(rook_polynomial(b, tiny) == rook_polynomial(b, big));
  CHECK(tiny.size() <= 3);
  CHECK(big.stats().hits > 0);
  lru.clear();
  CHECK(lru.size() == 0);
}
