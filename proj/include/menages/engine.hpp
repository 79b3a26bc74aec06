#pragma once

// One displacement set in one mode: its rook polynomials, counts and guessed
// recurrences, computed on demand and optionally persisted as a JSON file.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "menages/board.hpp"
#include "menages/counting.hpp"
#include "menages/guess.hpp"

namespace menages {

struct Budgets {
  int max_order = 12;
  int max_tdeg = 12;
  int max_complexity = 10;
  int max_degree = -1;  // -1: only max_complexity bounds the degree
  int held_out = 10;
};

class Family {
 public:
  /// Circular sets are normalized to minimum 0. An empty cache_dir disables
  /// the disk cache.
  Family(const DisplacementSet& s, Mode mode, std::filesystem::path cache_dir = {},
         Limits limits = {});

  const DisplacementSet& set() const noexcept { return s_; }
  Mode mode() const noexcept { return mode_; }
  /// "{0,1} circular"
  std::string label() const;
  /// Cache file for this family, or empty when caching is off.
  std::filesystem::path cache_file() const;

  /// R_1 .. R_count (straight and circular modes only).
  std::vector<IntPoly> rook(int count);
  /// a(1) .. a(count).
  std::vector<BigInt> counts(int count);

  /// Guess on the first cfinite_terms_needed(...) rook polynomials.
  std::optional<CFiniteRec> rook_recurrence(const Budgets& b);
  /// Guess on a(1) .. a(max(min_terms, holonomic_terms_needed(...))).
  std::optional<HolonomicRec> holonomic(const Budgets& b, int min_terms = 0);
  /// Scalar C-finite guess on a(0) = 1, a(1), ..., a(max(n, needed) - 1).
  std::optional<CFiniteRec> scalar_recurrence(const Budgets& b, int n = 0);

  /// Number of terms the guessers above will read.
  static int rook_terms_for(const Budgets& b);
  static int holonomic_terms_for(const Budgets& b, int min_terms);
  static int scalar_terms_for(const Budgets& b, int n);

  /// Writes the cache file if caching is on and something changed.
  void save();

 private:
  void load();
  std::optional<nlohmann::json> memo(const std::string& key) const;
  void remember(const std::string& key, nlohmann::json value);

  DisplacementSet s_;
  Mode mode_;
  std::filesystem::path cache_dir_;
  Limits limits_;
  RookCache cache_;
  std::vector<IntPoly> rook_;   // rook_[k] = R_{k+1}
  std::vector<BigInt> counts_;  // counts_[k] = a(k+1)
  std::map<std::string, nlohmann::json> recurrences_;
  bool dirty_ = false;
};

}  // namespace menages
