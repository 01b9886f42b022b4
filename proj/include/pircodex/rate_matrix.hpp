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

// PIR achievable rate matrices: a nu x n binary matrix with every column of
// weight kappa and every row support containing an information set of the
// storage code, plus the interference matrices A and B derived from it.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pircodex/errors.hpp"
#include "pircodex/linear_code.hpp"

namespace pircodex {

class RateMatrix {
 public:
  // Rows of 0/1 entries. Requires 1 <= kappa < nu and every column weight
  // equal to kappa.
  RateMatrix(std::size_t kappa, std::vector<std::vector<uint8_t>> rows)
      : kappa_(kappa), rows_(std::move(rows)) {
    if (rows_.empty() || rows_.front().empty()) {
      throw ParameterError("rate matrix must be nonempty");
    }
    if (kappa_ < 1 || kappa_ >= rows_.size()) {
      throw ParameterError("rate matrix needs 1 <= kappa < nu (kappa = " +
                           std::to_string(kappa_) +
                           ", nu = " + std::to_string(rows_.size()) + ")");
    }
    const std::size_t n = rows_.front().size();
    for (const auto& row : rows_) {
      if (row.size() != n) throw ParameterError("ragged rate matrix");
      for (uint8_t x : row) {
        if (x > 1) throw ParameterError("rate matrix entries must be 0 or 1");
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t weight = 0;
      for (const auto& row : rows_) weight += row[j];
      if (weight != kappa_) {
        throw ParameterError("column " + std::to_string(j + 1) + " has weight " +
                             std::to_string(weight) + ", expected kappa = " +
                             std::to_string(kappa_));
      }
    }
  }

  static RateMatrix from_supports(std::size_t n, std::size_t kappa,
                                  const std::vector<CoordinateSet>& supports) {
    std::vector<std::vector<uint8_t>> rows;
    for (const auto& s : supports) {
      if (!s.within(n)) throw ParameterError("row support exceeds n");
      std::vector<uint8_t> row(n, 0);
      for (std::size_t j : s) row[j - 1] = 1;
      rows.push_back(std::move(row));
    }
    return RateMatrix(kappa, std::move(rows));
  }

  std::size_t nu() const { return rows_.size(); }
  std::size_t kappa() const { return kappa_; }
  std::size_t n() const { return rows_.front().size(); }

  // 0-based row u and column j.
  bool operator()(std::size_t u, std::size_t j) const { return rows_[u][j] != 0; }
  const std::vector<std::vector<uint8_t>>& rows() const { return rows_; }

  // chi(lambda_u) for the 0-based row u, as 1-based coordinates.
  CoordinateSet row_support(std::size_t u) const {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < n(); ++j) {
      if (rows_[u][j]) s.push_back(j + 1);
    }
    return CoordinateSet(std::move(s));
  }

  friend bool operator==(const RateMatrix&, const RateMatrix&) = default;

 private:
  std::size_t kappa_;
  std::vector<std::vector<uint8_t>> rows_;
};

struct RateMatrixValidation {
  bool valid = false;
  // One contained information set per row, in row order (up to the failure).
  std::vector<CoordinateSet> witnesses;
  std::optional<std::size_t> failing_row;  // 1-based
  std::string reason;
};

inline RateMatrixValidation validate_rate_matrix(const RateMatrix& lambda,
                                                 const LinearCode& code) {
  if (lambda.n() != code.n()) {
    throw ParameterError("rate matrix has " + std::to_string(lambda.n()) +
                         " columns but the code has n = " +
                         std::to_string(code.n()));
  }
  RateMatrixValidation result;
  for (std::size_t j = 0; j < lambda.n(); ++j) {
    std::size_t weight = 0;
    for (std::size_t u = 0; u < lambda.nu(); ++u) weight += lambda(u, j);
    if (weight != lambda.kappa()) {
      result.reason = "column " + std::to_string(j + 1) + " weight differs from kappa";
      return result;
    }
  }
  for (std::size_t u = 0; u < lambda.nu(); ++u) {
    auto info = information_set_within(code, lambda.row_support(u));
    if (!info) {
      result.failing_row = u + 1;
      result.reason = "row " + std::to_string(u + 1) + " support " +
                      lambda.row_support(u).to_string() +
                      " contains no information set";
      return result;
    }
    result.witnesses.push_back(std::move(*info));
  }
  result.valid = true;
  return result;
}

enum class SearchStatus { found, not_found, indeterminate };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::not_found: return "not_found";
    case SearchStatus::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

struct SearchOptions {
  uint64_t node_budget = 20'000'000;
};

struct SearchResult {
  SearchStatus status = SearchStatus::indeterminate;
  std::optional<RateMatrix> matrix;
  uint64_t nodes = 0;
};

namespace detail {

class RateMatrixSearch {
 public:
  RateMatrixSearch(const LinearCode& code, std::size_t kappa, std::size_t nu,
                   uint64_t budget)
      : n_(code.n()), k_(code.k()), kappa_(kappa), nu_(nu), budget_(budget),
        groups_(code.n()), need_(code.n(), static_cast<int>(kappa)) {
    // Candidate rows: every support containing an information set, grouped by
    // smallest coordinate so that each multiset of rows is visited once.
    for (uint32_t mask = 1; mask < (uint32_t{1} << n_); ++mask) {
      if (std::popcount(mask) < static_cast<int>(k_)) continue;
      if (!contains_information_set(code, CoordinateSet::from_mask(mask))) continue;
      groups_[static_cast<std::size_t>(std::countr_zero(mask))].push_back(mask);
    }
    for (auto& g : groups_) {
      std::sort(g.begin(), g.end(), [](uint32_t a, uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
      });
    }
  }

  SearchResult run() {
    SearchResult result;
    try {
      const bool found = dfs(0, static_cast<int>(nu_));
      result.status = found ? SearchStatus::found : SearchStatus::not_found;
    } catch (const BudgetExhausted&) {
      result.status = SearchStatus::indeterminate;
    }
    result.nodes = nodes_;
    if (result.status == SearchStatus::found) {
      std::vector<CoordinateSet> supports;
      for (uint32_t m : chosen_) supports.push_back(CoordinateSet::from_mask(m));
      result.matrix = RateMatrix::from_supports(n_, kappa_, supports);
    }
    return result;
  }

 private:
  struct BudgetExhausted {};

  struct StateHash {
    std::size_t operator()(const std::pair<uint64_t, uint64_t>& s) const {
      return std::hash<uint64_t>()(s.first * 0x9E3779B97F4A7C15ull ^
                                   (s.second + 0x632BE59BD9B4E019ull));
    }
  };

  std::pair<uint64_t, uint64_t> state_key(std::size_t start, int remaining) const {
    // 5 bits per column need (kappa <= 16): columns 0..11 fill the first
    // word, the rest share the second word with start and remaining.
    uint64_t lo = 0, hi = 0;
    for (std::size_t j = 0; j < need_.size(); ++j) {
      const auto v = static_cast<uint64_t>(need_[j]);
      if (j < 12) {
        lo |= v << (5 * j);
      } else {
        hi |= v << (5 * (j - 12));
      }
    }
    hi |= static_cast<uint64_t>(remaining) << 20;
    hi |= static_cast<uint64_t>(start) << 28;
    return {lo, hi};
  }

  bool dfs(std::size_t start, int remaining) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    std::size_t lowest = n_;
    int total_need = 0;
    uint32_t allowed = 0, forced = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (need_[j] > 0) {
        if (lowest == n_) lowest = j;
        total_need += need_[j];
        allowed |= uint32_t{1} << j;
        if (need_[j] == remaining) forced |= uint32_t{1} << j;
        if (need_[j] > remaining) return false;
      }
    }
    if (lowest == n_) return remaining == 0;
    if (remaining == 0) return false;
    // Every remaining row carries at least k coordinates.
    if (total_need < remaining * static_cast<int>(k_)) return false;

    const auto key = state_key(start, remaining);
    if (failed_.contains(key)) return false;

    const auto& group = groups_[lowest];
    for (std::size_t idx = start; idx < group.size(); ++idx) {
      const uint32_t row = group[idx];
      if ((row & ~allowed) != 0 || (forced & ~row) != 0) continue;
      const int weight = std::popcount(row);
      if (total_need - weight < (remaining - 1) * static_cast<int>(k_)) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (row >> j & 1u) --need_[j];
      }
      chosen_.push_back(row);
      // Rows sharing a smallest coordinate are taken in nondecreasing order.
      const std::size_t next_start = need_[lowest] > 0 ? idx : 0;
      if (dfs(next_start, remaining - 1)) return true;
      chosen_.pop_back();
      for (std::size_t j = 0; j < n_; ++j) {
        if (row >> j & 1u) ++need_[j];
      }
    }
    failed_.insert(key);
    return false;
  }

  std::size_t n_, k_, kappa_, nu_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<std::vector<uint32_t>> groups_;
  std::vector<int> need_;
  std::vector<uint32_t> chosen_;
  std::unordered_set<std::pair<uint64_t, uint64_t>, StateHash> failed_;
};

}  // namespace detail

inline constexpr std::size_t kMaxSearchLength = 16;

// Exact backtracking search for a kappa x nu rate matrix. Completing the
// search without a hit is a proof of absence (not_found); running out of
// budget is reported separately as indeterminate.
inline SearchResult search_rate_matrix(const LinearCode& code, std::size_t kappa,
                                       std::size_t nu, SearchOptions options = {}) {
  if (kappa < 1 || kappa >= nu) {
    throw ParameterError("search needs 1 <= kappa < nu");
  }
  if (code.n() > kMaxSearchLength) {
    throw UnsupportedError("rate matrix search limited to n <= 16");
  }
  if (kappa > 16 || nu > 255) throw UnsupportedError("search dimensions too large");
  return detail::RateMatrixSearch(code, kappa, nu, options.node_budget).run();
}

// Row i is the indicator of pi_i(I). Every column has weight k because each
// coordinate j is hit by exactly one pi_i per element of I.
inline RateMatrix lambda_from_automorphisms(const LinearCode& code,
                                            const std::vector<Permutation>& perms,
                                            const CoordinateSet& info_set) {
  const std::size_t n = code.n();
  if (perms.size() != n) {
    throw PreconditionError("need exactly n = " + std::to_string(n) +
                            " permutations");
  }
  if (info_set.size() != code.k() || !info_set.within(n) ||
      !is_information_set(code, info_set)) {
    throw PreconditionError(info_set.to_string() + " is not an information set");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (perms[i].size() != n) throw PreconditionError("permutation length != n");
    for (std::size_t t = 0; t < i; ++t) {
      if (perms[t] == perms[i]) {
        throw PreconditionError("permutations " + std::to_string(t + 1) + " and " +
                                std::to_string(i + 1) + " coincide");
      }
    }
    if (!is_automorphism(code, perms[i])) {
      throw PreconditionError("permutation " + std::to_string(i + 1) +
                              " is not an automorphism");
    }
  }
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<bool> hit(n + 1, false);
    for (const auto& p : perms) hit[p(j)] = true;
    if (std::count(hit.begin() + 1, hit.end(), true) != static_cast<std::ptrdiff_t>(n)) {
      throw PreconditionError("images of coordinate " + std::to_string(j) +
                              " do not cover {1..n}");
    }
  }
  std::vector<CoordinateSet> supports;
  for (const auto& p : perms) supports.push_back(p.apply(info_set));
  return RateMatrix::from_supports(n, code.k(), supports);
}

// Rows are the n cyclic shifts of I; each shift must itself be an
// information set (always true for MDS codes).
inline RateMatrix lambda_from_shifted_information_set(const LinearCode& code,
                                                      const CoordinateSet& info_set) {
  const std::size_t n = code.n();
  std::vector<CoordinateSet> supports;
  for (std::size_t s = 0; s < n; ++s) {
    CoordinateSet shifted = Permutation::rotation(n, s).apply(info_set);
    if (!is_information_set(code, shifted)) {
      throw PreconditionError("shift " + shifted.to_string() +
                              " is not an information set");
    }
    supports.push_back(std::move(shifted));
  }
  return RateMatrix::from_supports(n, code.k(), supports);
}

// Small integer matrix with 1-based entries, stored row-major, 0-based access.
struct IndexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> data;

  std::size_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::size_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }

  std::vector<std::vector<std::size_t>> to_rows() const {
    std::vector<std::vector<std::size_t>> out(rows, std::vector<std::size_t>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) out[i][j] = (*this)(i, j);
    }
    return out;
  }

  friend bool operator==(const IndexMatrix&, const IndexMatrix&) = default;
};

// A is kappa x n, B is (nu - kappa) x n. Column j of A lists ascending the
// rows u with lambda_{u,j} = 1; column j of B lists the remaining rows.
struct InterferencePair {
  std::size_t nu = 0;
  IndexMatrix a;
  IndexMatrix b;
};

inline InterferencePair interference(const RateMatrix& lambda) {
  const std::size_t n = lambda.n(), nu = lambda.nu(), kappa = lambda.kappa();
  InterferencePair pair{nu, {kappa, n, std::vector<std::size_t>(kappa * n)},
                        {nu - kappa, n, std::vector<std::size_t>((nu - kappa) * n)}};
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t ia = 0, ib = 0;
    for (std::size_t u = 0; u < nu; ++u) {
      if (lambda(u, j)) {
        pair.a(ia++, j) = u + 1;
      } else {
        pair.b(ib++, j) = u + 1;
      }
    }
  }
  return pair;
}

// S(a|A): the columns of A containing the entry a.
inline CoordinateSet s_set(const IndexMatrix& a_matrix, std::size_t a, std::size_t nu) {
  if (a < 1 || a > nu) {
    throw ParameterError("row label " + std::to_string(a) + " outside [1, nu]");
  }
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < a_matrix.cols; ++j) {
    for (std::size_t i = 0; i < a_matrix.rows; ++i) {
      if (a_matrix(i, j) == a) {
        cols.push_back(j + 1);
        break;
      }
    }
  }
  return CoordinateSet(std::move(cols));
}

inline CoordinateSet s_set(const InterferencePair& pair, std::size_t a) {
  return s_set(pair.a, a, pair.nu);
}

struct InterferenceReport {
  struct LabelCheck {
    std::size_t a = 0;
    CoordinateSet s_set;
    std::optional<CoordinateSet> information_set;
  };
  struct InterferenceCheck {
    std::size_t i = 0, j = 0, b = 0;  // 1-based position and entry of B
    bool excludes_j = false;
    std::optional<CoordinateSet> information_set;
  };

  bool holds = true;
  std::vector<LabelCheck> labels;
  std::vector<InterferenceCheck> entries;
  // First failure as (a, j); j = 0 for a failure of the first statement.
  std::optional<std::pair<std::size_t, std::size_t>> failure;
};

// Checks that every S(a|A) contains an information set and that, for every
// entry b_{i,j} of B, S(b_{i,j}|A) avoids j and contains an information set.
inline InterferenceReport verify_interference(const LinearCode& code, const RateMatrix& lambda) {
  if (lambda.n() != code.n()) throw ParameterError("rate matrix width != n");
  const InterferencePair pair = interference(lambda);
  InterferenceReport report;
  for (std::size_t a = 1; a <= pair.nu; ++a) {
    InterferenceReport::LabelCheck check{a, s_set(pair, a), std::nullopt};
    check.information_set = information_set_within(code, check.s_set);
    if (!check.information_set && !report.failure) {
      report.holds = false;
      report.failure = std::pair{a, std::size_t{0}};
    }
    report.labels.push_back(std::move(check));
  }
  for (std::size_t i = 0; i < pair.b.rows; ++i) {
    for (std::size_t j = 0; j < pair.b.cols; ++j) {
      InterferenceReport::InterferenceCheck check;
      check.i = i + 1;
      check.j = j + 1;
      check.b = pair.b(i, j);
      const CoordinateSet& s = report.labels[check.b - 1].s_set;
      check.excludes_j = !s.contains(j + 1);
      check.information_set = report.labels[check.b - 1].information_set;
      if ((!check.excludes_j || !check.information_set) && !report.failure) {
        report.holds = false;
        report.failure = std::pair{check.b, j + 1};
      }
      report.entries.push_back(std::move(check));
    }
  }
  return report;
}

struct RatioCheck {
  bool bound_holds = false;  // kappa/nu >= k/n
  bool equality = false;     // kappa/nu == k/n, a capacity-achieving matrix
};

inline RatioCheck ratio_bound_check(const RateMatrix& lambda, const LinearCode& code) {
  const auto lhs = static_cast<uint64_t>(lambda.kappa()) * code.n();
  const auto rhs = static_cast<uint64_t>(code.k()) * lambda.nu();
  return {lhs >= rhs, lhs == rhs};
}

// Text form: a `nu kappa n` header followed by nu rows of 0/1 entries.
inline std::string format_rate_matrix(const RateMatrix& lambda) {
  std::ostringstream os;
  os << lambda.nu() << ' ' << lambda.kappa() << ' ' << lambda.n() << '\n';
  for (const auto& row : lambda.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << (j ? " " : "") << static_cast<int>(row[j]);
    }
    os << '\n';
  }
  return os.str();
}

inline RateMatrix parse_rate_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<uint64_t>> numbers;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<uint64_t> values;
    std::string token;
    while (ls >> token) values.push_back(detail::parse_unsigned(token));
    if (!values.empty()) numbers.push_back(std::move(values));
  }
  if (numbers.empty() || numbers.front().size() != 3) {
    throw ParseError("rate matrix header must be `nu kappa n`");
  }
  const auto nu = numbers[0][0], kappa = numbers[0][1], n = numbers[0][2];
  if (numbers.size() != nu + 1) {
    throw ParseError("expected " + std::to_string(nu) + " rate matrix rows");
  }
  std::vector<std::vector<uint8_t>> rows;
  for (std::size_t u = 1; u <= nu; ++u) {
    if (numbers[u].size() != n) throw ParseError("rate matrix row width != n");
    std::vector<uint8_t> row;
    for (uint64_t v : numbers[u]) {
      if (v > 1) throw ParseError("rate matrix entries must be 0 or 1");
      row.push_back(static_cast<uint8_t>(v));
    }
    rows.push_back(std::move(row));
  }
  try {
    return RateMatrix(kappa, std::move(rows));
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

inline std::string format_index_matrix(const IndexMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace pircodex
