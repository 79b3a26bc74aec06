#include "menages/engine.hpp"

#include <algorithm>
#include <fstream>
#include <system_error>

#include "menages/errors.hpp"
#include "menages/io.hpp"

namespace menages {

namespace {

std::string file_stem(const DisplacementSet& s, Mode mode) {
  std::string out = mode_name(mode);
  if (s.empty()) return out + "_empty";
  for (int d : s) out += d < 0 ? "_m" + std::to_string(-d) : "_" + std::to_string(d);
  return out;
}

std::string budget_key(const char* kind, const Budgets& b, int terms) {
  std::string key = kind;
  if (std::string(kind) == "rook") {
    key += ":order=" + std::to_string(b.max_order) + ",tdeg=" + std::to_string(b.max_tdeg);
  } else if (std::string(kind) == "scalar") {
    key += ":order=" + std::to_string(b.max_order);
  } else {
    key += ":complexity=" + std::to_string(b.max_complexity) + ",degree=" + std::to_string(b.max_degree);
  }
  return key + ",held_out=" + std::to_string(b.held_out) + ",terms=" + std::to_string(terms);
}

}  // namespace

Family::Family(const DisplacementSet& s, Mode mode, std::filesystem::path cache_dir, Limits limits)
    : s_(mode == Mode::kCircular ? normalize_circular(s) : s),
      mode_(mode),
      cache_dir_(std::move(cache_dir)),
      limits_(limits) {
  if (mode_ == Mode::kAllowed && s_.empty()) throw InvalidInput("allowed mode needs a nonempty set");
  load();
}

std::string Family::label() const { return format_set(s_) + " " + mode_name(mode_); }

std::filesystem::path Family::cache_file() const {
  if (cache_dir_.empty()) return {};
  return cache_dir_ / (file_stem(s_, mode_) + ".json");
}

int Family::rook_terms_for(const Budgets& b) {
  return static_cast<int>(cfinite_terms_needed(b.max_order, b.max_tdeg, b.held_out));
}

int Family::holonomic_terms_for(const Budgets& b, int min_terms) {
  // Extra terms keep the fitting rows clear of small n, where recurrences
  // often fail to hold yet.
  constexpr int kSlack = 10;
  const int need = static_cast<int>(holonomic_terms_needed(b.max_complexity, b.held_out, b.max_degree));
  return std::max(min_terms, need + kSlack);
}

int Family::scalar_terms_for(const Budgets& b, int n) {
  return std::max(n, static_cast<int>(cfinite_terms_needed(b.max_order, 0, b.held_out)));
}

std::vector<IntPoly> Family::rook(int count) {
  if (mode_ == Mode::kAllowed) throw InvalidInput("allowed mode has no rook polynomials");
  const int have = static_cast<int>(rook_.size());
  if (count > have) {
    auto more = rook_sequence(s_, have + 1, count, mode_, cache_);
    rook_.insert(rook_.end(), more.begin(), more.end());
    dirty_ = true;
  }
  return {rook_.begin(), rook_.begin() + std::max(count, 0)};
}

std::vector<BigInt> Family::counts(int count) {
  std::vector<BigInt> out;
  if (count <= 0) return out;
  if (mode_ == Mode::kAllowed) {
    for (int n = static_cast<int>(counts_.size()) + 1; n <= count; ++n) {
      counts_.push_back(count_allowed(s_, n, limits_.window_cap));
      dirty_ = true;
    }
    return {counts_.begin(), counts_.begin() + count};
  }
  auto r = rook(count);
  out.reserve(r.size());
  for (int n = 1; n <= count; ++n) out.push_back(umbral_count(r[static_cast<std::size_t>(n - 1)], n));
  return out;
}

std::optional<CFiniteRec> Family::rook_recurrence(const Budgets& b) {
  const int terms = rook_terms_for(b);
  const std::string key = budget_key("rook", b, terms);
  if (auto hit = memo(key)) {
    if (hit->is_null()) return std::nullopt;
    return cfinite_from_json(*hit);
  }
  GuessOptions opts;
  opts.held_out = b.held_out;
  auto rec = guess_cfinite_poly(rook(terms), b.max_order, b.max_tdeg, opts);
  remember(key, rec ? to_json(*rec) : nlohmann::json(nullptr));
  return rec;
}

std::optional<HolonomicRec> Family::holonomic(const Budgets& b, int min_terms) {
  const int terms = holonomic_terms_for(b, min_terms);
  const std::string key = budget_key("holonomic", b, terms);
  if (auto hit = memo(key)) {
    if (hit->is_null()) return std::nullopt;
    return holonomic_from_json(*hit);
  }
  GuessOptions opts;
  opts.held_out = b.held_out;
  auto rec = guess_holonomic(counts(terms), b.max_complexity, opts, b.max_degree);
  remember(key, rec ? to_json(*rec) : nlohmann::json(nullptr));
  return rec;
}

std::optional<CFiniteRec> Family::scalar_recurrence(const Budgets& b, int n) {
  const int terms = scalar_terms_for(b, n);
  const std::string key = budget_key("scalar", b, terms);
  if (auto hit = memo(key)) {
    if (hit->is_null()) return std::nullopt;
    return cfinite_from_json(*hit);
  }
  std::vector<BigInt> a{BigInt(1)};
  auto rest = counts(terms - 1);
  a.insert(a.end(), rest.begin(), rest.end());
  GuessOptions opts;
  opts.held_out = b.held_out;
  opts.first_index = 0;
  auto rec = guess_cfinite_scalar(a, b.max_order, opts);
  remember(key, rec ? to_json(*rec) : nlohmann::json(nullptr));
  return rec;
}

std::optional<nlohmann::json> Family::memo(const std::string& key) const {
  auto it = recurrences_.find(key);
  if (it == recurrences_.end()) return std::nullopt;
  return std::optional<nlohmann::json>(std::in_place, it->second);
}

void Family::remember(const std::string& key, nlohmann::json value) {
  recurrences_[key] = std::move(value);
  dirty_ = true;
}

void Family::load() {
  const auto path = cache_file();
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) return;
  // A cache that does not parse or belongs to another family is ignored.
  try {
    json j = json::parse(in);
    if (j.at("S").get<std::string>() != format_set(s_) || j.at("mode").get<std::string>() != mode_name(mode_)) return;
    std::vector<IntPoly> rook;
    for (const auto& p : j.value("rook", json::array())) rook.push_back(poly_from_json(p, 't'));
    std::vector<BigInt> counts;
    for (const auto& a : j.value("counts", json::array())) counts.push_back(parse_bigint(a.get<std::string>()));
    std::map<std::string, json> recs;
    const json saved = j.value("recurrences", json::object());
    for (const auto& [k, v] : saved.items()) recs[k] = v;
    rook_ = std::move(rook);
    counts_ = std::move(counts);
    recurrences_ = std::move(recs);
  } catch (const std::exception&) {
    rook_.clear();
    counts_.clear();
    recurrences_.clear();
  }
}

void Family::save() {
  const auto path = cache_file();
  if (path.empty() || !dirty_) return;
  json j;
  j["S"] = format_set(s_);
  j["mode"] = mode_name(mode_);
  j["rook"] = json::array();
  for (const auto& p : rook_) j["rook"].push_back(poly_to_json(p));
  j["counts"] = json::array();
  for (const auto& a : counts_) j["counts"].push_back(to_decimal(a));
  j["recurrences"] = json::object();
  for (const auto& [k, v] : recurrences_) j["recurrences"][k] = v;

  std::error_code ec;
  std::filesystem::create_directories(cache_dir_, ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
  dirty_ = false;
}

}  // namespace menages
