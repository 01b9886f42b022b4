// Copyright 2026 The pircodex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Closed-form rates, the generalized-Hamming-weight necessary condition,
// classification of codes, and the exhaustive scan over small binary codes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pircodex/errors.hpp"
#include "pircodex/field_matrix.hpp"
#include "pircodex/linear_code.hpp"
#include "pircodex/rate_matrix.hpp"
#include "pircodex/rational.hpp"

namespace pircodex {

// C_f = ((n-k)/n) / (1 - (k/n)^f); 1 when k = n.
inline Rational mds_pir_capacity(std::size_t n, std::size_t k, std::size_t f) {
  if (k < 1 || k > n || f < 1) {
    throw ParameterError("capacity needs 1 <= k <= n and f >= 1");
  }
  if (k == n) return Rational(1);
  const Rational ratio(static_cast<int64_t>(k), static_cast<int64_t>(n));
  return (1 - ratio) / (1 - rational_pow(ratio, f));
}

// f -> infinity limit of the capacity, (n-k)/n.
inline Rational capacity_limit(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw ParameterError("capacity needs 1 <= k <= n");
  return Rational(static_cast<int64_t>(n - k), static_cast<int64_t>(n));
}

// R = ((nu-kappa) k / (kappa n)) / (1 - (kappa/nu)^f).
inline Rational achievable_rate(std::size_t kappa, std::size_t nu, std::size_t n,
                                std::size_t k, std::size_t f) {
  if (kappa < 1 || kappa >= nu) throw ParameterError("rate needs 1 <= kappa < nu");
  if (k < 1 || k > n || f < 1) throw ParameterError("rate needs 1 <= k <= n and f >= 1");
  const Rational lead(static_cast<int64_t>((nu - kappa) * k), static_cast<int64_t>(kappa * n));
  const Rational ratio(static_cast<int64_t>(kappa), static_cast<int64_t>(nu));
  return lead / (1 - rational_pow(ratio, f));
}

inline Rational achievable_rate(const RateMatrix& lambda, const LinearCode& code, std::size_t f) {
  const auto v = validate_rate_matrix(lambda, code);
  if (!v.valid) throw ParameterError("rate matrix is not valid for the code: " + v.reason);
  return achievable_rate(lambda.kappa(), lambda.nu(), code.n(), code.k(), f);
}

// f -> infinity limit of the achievable rate, (nu-kappa) k / (kappa n).
inline Rational achievable_rate_limit(std::size_t kappa, std::size_t nu, std::size_t n,
                                      std::size_t k) {
  if (kappa < 1 || kappa >= nu) throw ParameterError("rate needs 1 <= kappa < nu");
  return Rational(static_cast<int64_t>((nu - kappa) * k), static_cast<int64_t>(kappa * n));
}

enum class ConditionStatus { pass, fail, indeterminate };

inline const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::pass: return "pass";
    case ConditionStatus::fail: return "fail";
    case ConditionStatus::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

struct NecessaryCondition {
  ConditionStatus status = ConditionStatus::pass;
  std::vector<std::size_t> weights;  // d_1, d_2, ... as far as computed
  std::size_t failing_s = 0;         // 0 unless status == fail
  std::size_t failing_weight = 0;
  std::string note;
};

// Checks k d_s >= n s for s = 1..s_max, stopping at the first failure.
inline NecessaryCondition necessary_condition(const LinearCode& code, std::size_t s_max,
                                              uint64_t budget = kDefaultEnumerationBudget) {
  if (s_max > code.k()) throw ParameterError("s_max exceeds k");
  NecessaryCondition out;
  for (std::size_t s = 1; s <= s_max; ++s) {
    std::size_t d = 0;
    try {
      d = generalized_hamming_weight(code, s, budget);
    } catch (const TooLargeError& e) {
      out.status = ConditionStatus::indeterminate;
      out.note = "weight d_" + std::to_string(s) + " exceeded the enumeration budget";
      return out;
    }
    out.weights.push_back(d);
    if (code.k() * d < code.n() * s) {
      out.status = ConditionStatus::fail;
      out.failing_s = s;
      out.failing_weight = d;
      return out;
    }
  }
  return out;
}

inline NecessaryCondition necessary_condition(const LinearCode& code) {
  return necessary_condition(code, code.k());
}

// Rate of the scheme built from t = min(k, d_min - 1):
// (t/n) / (1 - (k/(k+t))^f).
inline Rational distance_rate(const LinearCode& code, std::size_t f,
                                uint64_t budget = kDefaultEnumerationBudget) {
  if (f < 1) throw ParameterError("f must be at least 1");
  const std::size_t d = min_distance(code, budget);
  const std::size_t t = std::min(code.k(), d - 1);
  if (t == 0) throw DomainError("rate undefined for minimum distance 1");
  const Rational lead(static_cast<int64_t>(t), static_cast<int64_t>(code.n()));
  const Rational ratio(static_cast<int64_t>(code.k()), static_cast<int64_t>(code.k() + t));
  return lead / (1 - rational_pow(ratio, f));
}

enum class Verdict { capacity_achieving, ruled_out, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::capacity_achieving: return "capacity_achieving";
    case Verdict::ruled_out: return "ruled_out";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

struct Classification {
  Verdict verdict = Verdict::indeterminate;
  std::string method;                 // trivial, automorphisms:<kind>, search, weights
  std::optional<RateMatrix> lambda;   // witness when capacity achieving (k < n)
  std::size_t failing_s = 0;          // witness when ruled out
  std::size_t failing_weight = 0;
  NecessaryCondition condition;
  std::string note;
};

struct ClassifyOptions {
  uint64_t search_budget = SearchOptions{}.node_budget;
  uint64_t ghw_budget = kDefaultEnumerationBudget;
  std::vector<std::size_t> multiples = {1, 2};
};

namespace detail {

inline std::optional<RateMatrix> lambda_by_automorphisms(const LinearCode& code,
                                                         AutomorphismKind kind) {
  std::vector<Permutation> perms;
  try {
    perms = automorphism_family(code, kind);
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
  std::vector<std::size_t> all(code.n());
  std::iota(all.begin(), all.end(), 1);
  auto info = information_set_within(code, CoordinateSet(std::move(all)));
  if (!info) return std::nullopt;
  return lambda_from_automorphisms(code, perms, *info);
}

}  // namespace detail

inline Classification classify(const LinearCode& code, const ClassifyOptions& options = {}) {
  Classification out;
  const std::size_t n = code.n(), k = code.k();
  if (k == n) {
    out.verdict = Verdict::capacity_achieving;
    out.method = "trivial";
    out.note = "k = n: capacity taken as 1 by convention";
    return out;
  }

  out.condition = necessary_condition(code, k, options.ghw_budget);
  if (out.condition.status == ConditionStatus::fail) {
    out.verdict = Verdict::ruled_out;
    out.method = "weights";
    out.failing_s = out.condition.failing_s;
    out.failing_weight = out.condition.failing_weight;
    return out;
  }

  for (AutomorphismKind kind : {AutomorphismKind::cyclic_shifts, AutomorphismKind::rm_translations}) {
    if (auto lambda = detail::lambda_by_automorphisms(code, kind)) {
      out.verdict = Verdict::capacity_achieving;
      out.method = std::string("automorphisms:") + to_string(kind);
      out.lambda = std::move(lambda);
      return out;
    }
  }

  const std::size_t g = std::gcd(n, k);
  bool exhausted = false;
  bool too_long = false;
  for (std::size_t c : options.multiples) {
    const std::size_t kappa = k / g * c, nu = n / g * c;
    if (n > kMaxSearchLength) {
      too_long = true;
      break;
    }
    SearchOptions so;
    so.node_budget = options.search_budget;
    SearchResult r = search_rate_matrix(code, kappa, nu, so);
    if (r.status == SearchStatus::found) {
      out.verdict = Verdict::capacity_achieving;
      out.method = "search";
      out.lambda = std::move(r.matrix);
      return out;
    }
    if (r.status == SearchStatus::indeterminate) exhausted = true;
  }
  out.verdict = Verdict::indeterminate;
  std::string tried;
  for (std::size_t c : options.multiples) {
    if (!tried.empty()) tried += ", ";
    tried += "(" + std::to_string(k / g * c) + "," + std::to_string(n / g * c) + ")";
  }
  if (too_long) {
    out.note = "length exceeds the search limit";
  } else {
    out.note = std::string(exhausted ? "search budget exhausted" : "no matrix found") +
               " for (kappa,nu) in " + tried;
  }
  if (out.condition.status == ConditionStatus::indeterminate) {
    out.note += "; " + out.condition.note;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Small-code scan.

namespace detail {

// All k x n generators in reduced row echelon form over GF(q), full rank.
inline void for_each_rref(const Field& field, std::size_t n, std::size_t k,
                          const std::function<void(const FieldMatrix&)>& fn) {
  const uint32_t q = static_cast<uint32_t>(field.order());
  std::vector<std::size_t> pivots(k);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = pivots[i] + 1; c < n; ++c) {
        if (!is_pivot[c]) free_cells.emplace_back(i, c);
      }
    }
    FieldMatrix g(field, k, n);
    for (std::size_t i = 0; i < k; ++i) g.set(i, pivots[i], 1);
    std::vector<uint32_t> digits(free_cells.size(), 0);
    while (true) {
      fn(g);
      std::size_t t = 0;
      for (; t < digits.size(); ++t) {
        if (++digits[t] < q) {
          g.set(free_cells[t].first, free_cells[t].second, digits[t]);
          break;
        }
        digits[t] = 0;
        g.set(free_cells[t].first, free_cells[t].second, 0);
      }
      if (t == digits.size()) break;
    }
    std::ptrdiff_t t = static_cast<std::ptrdiff_t>(k) - 1;
    while (t >= 0 && pivots[t] == n - k + static_cast<std::size_t>(t)) --t;
    if (t < 0) break;
    ++pivots[t];
    for (std::size_t u = static_cast<std::size_t>(t) + 1; u < k; ++u) pivots[u] = pivots[u - 1] + 1;
  }
}

// Lexicographically least RREF over all column permutations; equal values
// mean permutation-equivalent codes.
inline std::vector<uint32_t> canonical_form(const FieldMatrix& g) {
  const std::size_t n = g.cols();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<uint32_t> best;
  do {
    const EchelonForm ef = reduced_row_echelon(g.select_columns(perm));
    std::vector<uint32_t> flat;
    flat.reserve(g.rows() * n);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      const auto row = ef.reduced.row(r);
      flat.insert(flat.end(), row.begin(), row.end());
    }
    if (best.empty() || flat < best) best = std::move(flat);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline FieldMatrix matrix_from_flat(const Field& field, std::size_t k, std::size_t n,
                                    const std::vector<uint32_t>& flat) {
  FieldMatrix g(field, k, n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c) g.set(r, c, flat[r * n + c]);
  }
  return g;
}

}  // namespace detail

inline std::string generator_string(const FieldMatrix& g) {
  std::string out;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (r) out += '|';
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const uint32_t v = g(r, c);
      out += v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
    }
  }
  return out;
}

enum class Agreement { agree, disagree, indeterminate };

inline const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::agree: return "agree";
    case Agreement::disagree: return "disagree";
    case Agreement::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

struct ScanRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string generator;             // canonical generator rows
  bool spot_check = false;           // sampled rather than exhaustive
  ConditionStatus condition = ConditionStatus::pass;
  std::size_t failing_s = 0;
  SearchStatus search = SearchStatus::not_found;
  std::size_t kappa = 0;             // parameters of the witness, when found
  std::size_t nu = 0;
  uint64_t search_nodes = 0;
  Agreement agreement = Agreement::agree;
};

struct ScanOptions {
  std::size_t n_min = 1;
  std::size_t n_max = 5;
  uint64_t q = 2;
  uint64_t search_budget = 2'000'000;
  std::vector<std::size_t> multiples = {1, 2};
  // Random codes at extra lengths, deduplicated like the exhaustive part.
  std::vector<std::size_t> spot_lengths = {};
  std::vector<std::size_t> spot_dimensions = {2, 3};
  std::size_t spot_samples = 10;
  uint64_t seed = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::size_t disagreements = 0;
  std::size_t indeterminate = 0;
};

inline ScanRow scan_code(const LinearCode& code, const ScanOptions& options) {
  ScanRow row;
  row.n = code.n();
  row.k = code.k();
  row.generator = generator_string(code.generator());
  const NecessaryCondition nc = necessary_condition(code);
  row.condition = nc.status;
  row.failing_s = nc.failing_s;

  const std::size_t g = std::gcd(row.n, row.k);
  bool any_indeterminate = false;
  row.search = SearchStatus::not_found;
  for (std::size_t c : options.multiples) {
    SearchOptions so;
    so.node_budget = options.search_budget;
    const std::size_t kappa = row.k / g * c, nu = row.n / g * c;
    SearchResult r = search_rate_matrix(code, kappa, nu, so);
    row.search_nodes += r.nodes;
    if (r.status == SearchStatus::found) {
      row.search = SearchStatus::found;
      row.kappa = kappa;
      row.nu = nu;
      break;
    }
    if (r.status == SearchStatus::indeterminate) any_indeterminate = true;
  }
  if (row.search != SearchStatus::found && any_indeterminate) {
    row.search = SearchStatus::indeterminate;
  }

  if (row.condition == ConditionStatus::indeterminate) {
    row.agreement = Agreement::indeterminate;
  } else if (row.search == SearchStatus::found) {
    row.agreement = row.condition == ConditionStatus::pass ? Agreement::agree : Agreement::disagree;
  } else if (row.condition == ConditionStatus::fail) {
    // Nothing can be found for a failing code; an unfinished search is fine.
    row.agreement = Agreement::agree;
  } else {
    row.agreement = row.search == SearchStatus::indeterminate ? Agreement::indeterminate
                                                              : Agreement::disagree;
  }
  return row;
}

// Inequivalent (under column permutation) [n,k] codes over GF(q), 1 <= k < n,
// for n_min <= n <= n_max, each checked for agreement between the weight
// condition and the existence of a rate matrix with kappa/nu = k/n.
inline ScanReport scan_codes(const ScanOptions& options) {
  if (options.n_max > 8) throw ParameterError("scan length above 8 is outside desk scale");
  const Field field = Field::of_order(options.q);
  ScanReport report;
  auto add = [&](ScanRow row) {
    if (row.agreement == Agreement::disagree) ++report.disagreements;
    if (row.agreement == Agreement::indeterminate) ++report.indeterminate;
    report.rows.push_back(std::move(row));
  };

  for (std::size_t n = std::max<std::size_t>(options.n_min, 2); n <= options.n_max; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      std::set<std::vector<uint32_t>> classes;
      detail::for_each_rref(field, n, k, [&](const FieldMatrix& g) {
        classes.insert(detail::canonical_form(g));
      });
      for (const auto& flat : classes) {
        const LinearCode code = code_from_generator(detail::matrix_from_flat(field, k, n, flat));
        add(scan_code(code, options));
      }
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<uint64_t> pick(0, field.order() - 1);
  for (std::size_t n : options.spot_lengths) {
    for (std::size_t k : options.spot_dimensions) {
      if (k >= n) continue;
      std::set<std::vector<uint32_t>> classes;
      std::size_t attempts = 0;
      while (classes.size() < options.spot_samples && attempts < 100 * options.spot_samples) {
        ++attempts;
        FieldMatrix g(field, k, n);
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = 0; c < n; ++c) g.set(r, c, static_cast<uint32_t>(pick(rng)));
        }
        if (mat_rank(g) < k) continue;
        classes.insert(detail::canonical_form(g));
      }
      for (const auto& flat : classes) {
        const LinearCode code = code_from_generator(detail::matrix_from_flat(field, k, n, flat));
        ScanRow row = scan_code(code, options);
        row.spot_check = true;
        add(std::move(row));
      }
    }
  }
  return report;
}

}  // namespace pircodex
