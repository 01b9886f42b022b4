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

// Single-user PIR over f files striped into beta = nu^f stripes per file and
// stored with an arbitrary [n,k] code, driven by a rate matrix Lambda.
//
// The user downloads in kappa repetitions of f rounds. Round l queries sums
// of l files. Sums over files other than the requested one ("undesired")
// come in blocks of nu virtual codewords z_1..z_nu; node j downloads z_u[j]
// for u in A_j. Any z_u is then decodable from the nodes S(u|A), which yields
// the aligned sums z_b[j] for b in B_j at every node j. Round l+1 pairs each
// requested-file symbol with one aligned sum of round l, so subtracting it
// isolates the requested symbol. Requested symbols of row label u are held
// by exactly the nodes S(u|A), which contain an information set.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "pircodex/errors.hpp"
#include "pircodex/field_matrix.hpp"
#include "pircodex/linear_code.hpp"
#include "pircodex/rate_matrix.hpp"

namespace pircodex {

namespace detail {

inline uint64_t binomial(uint64_t n, uint64_t r) {
  if (r > n) return 0;
  uint64_t result = 1;
  for (uint64_t t = 1; t <= r; ++t) result = result * (n - r + t) / t;
  return result;
}

inline void check_round(std::size_t ell, std::size_t f) {
  if (f < 1 || ell >= f) {
    throw ParameterError("round index must satisfy 0 <= l <= f - 1");
  }
}

}  // namespace detail

// U(l) = sum_{h=1}^{l} kappa^{f-(h+1)} (nu-kappa)^{h-1}: undesired blocks per
// repetition used by rounds 1..l.
inline uint64_t u_of(std::size_t ell, std::size_t f, std::size_t kappa, std::size_t nu) {
  detail::check_round(ell, f);
  if (kappa > nu) throw ParameterError("kappa must not exceed nu");
  uint64_t total = 0;
  for (std::size_t h = 1; h <= ell; ++h) {
    total += detail::checked_pow(kappa, f - h - 1) * detail::checked_pow(nu - kappa, h - 1);
  }
  return total;
}

// D(l) = kappa^{f-1} + sum_{h=1}^{l} C(f-1,h) kappa^{f-(h+1)} (nu-kappa)^h.
inline uint64_t d_of(std::size_t ell, std::size_t f, std::size_t kappa, std::size_t nu) {
  detail::check_round(ell, f);
  if (kappa > nu) throw ParameterError("kappa must not exceed nu");
  uint64_t total = detail::checked_pow(kappa, f - 1);
  for (std::size_t h = 1; h <= ell; ++h) {
    total += detail::binomial(f - 1, h) * detail::checked_pow(kappa, f - h - 1) *
             detail::checked_pow(nu - kappa, h);
  }
  return total;
}

// N(l) = C(f-1, l).
inline uint64_t n_of(std::size_t ell, std::size_t f) {
  detail::check_round(ell, f);
  return detail::binomial(f - 1, ell);
}

class ProtocolParams {
 public:
  static constexpr uint64_t kMaxStripes = uint64_t{1} << 20;

  static ProtocolParams make(LinearCode code, RateMatrix lambda, std::size_t files) {
    if (files < 1) throw ParameterError("need at least one file");
    const auto validation = validate_rate_matrix(lambda, code);
    if (!validation.valid) {
      throw ParameterError("rate matrix is not valid for the code: " + validation.reason);
    }
    const uint64_t beta = detail::checked_pow(lambda.nu(), files, kMaxStripes);
    return ProtocolParams(std::move(code), std::move(lambda), files,
                          static_cast<std::size_t>(beta));
  }

  const LinearCode& code() const { return code_; }
  const RateMatrix& lambda() const { return lambda_; }
  const InterferencePair& interference() const { return interference_; }
  std::size_t files() const { return files_; }
  std::size_t beta() const { return beta_; }
  std::size_t kappa() const { return lambda_.kappa(); }
  std::size_t nu() const { return lambda_.nu(); }
  std::size_t n() const { return code_.n(); }
  std::size_t k() const { return code_.k(); }

  // Decoder over an information set inside S(u|A), u in 1..nu.
  const InformationSetDecoder& decoder(std::size_t u) const { return decoders_.at(u - 1); }
  const CoordinateSet& holders(std::size_t u) const { return holders_.at(u - 1); }

  // a_{i,j} and b_{r,j} with 1-based indices.
  std::size_t a(std::size_t i, std::size_t j) const { return interference_.a(i - 1, j - 1); }
  std::size_t b(std::size_t r, std::size_t j) const { return interference_.b(r - 1, j - 1); }

  // kappa * n * (nu^f - kappa^f) / (nu - kappa).
  uint64_t expected_download() const {
    const uint64_t nu_f = detail::checked_pow(nu(), files_);
    const uint64_t kappa_f = detail::checked_pow(kappa(), files_);
    return kappa() * n() * ((nu_f - kappa_f) / (nu() - kappa()));
  }

 private:
  ProtocolParams(LinearCode code, RateMatrix lambda, std::size_t files, std::size_t beta)
      : code_(std::move(code)),
        lambda_(std::move(lambda)),
        interference_(pircodex::interference(lambda_)),
        files_(files),
        beta_(beta) {
    for (std::size_t u = 1; u <= lambda_.nu(); ++u) {
      holders_.push_back(s_set(interference_, u));
      auto info = information_set_within(code_, holders_.back());
      if (!info) {
        throw Error("S(" + std::to_string(u) + "|A) holds no information set");
      }
      decoders_.emplace_back(code_, std::move(*info));
    }
  }

  LinearCode code_;
  RateMatrix lambda_;
  InterferencePair interference_;
  std::size_t files_;
  std::size_t beta_;
  std::vector<CoordinateSet> holders_;
  std::vector<InformationSetDecoder> decoders_;
};

// What a node receives: a 0/1 selection over its beta*f stored symbols, kept
// sparse. Position p addresses row p % beta of file p / beta + 1.
struct Query {
  std::vector<std::size_t> positions;  // sorted, nonempty

  std::vector<uint8_t> to_dense(std::size_t length) const {
    std::vector<uint8_t> dense(length, 0);
    for (std::size_t p : positions) dense.at(p) = 1;
    return dense;
  }
};

enum class QueryKind { desired_first_round, desired_with_side_information, undesired };

inline const char* to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::desired_first_round: return "desired_first_round";
    case QueryKind::desired_with_side_information: return "desired_side_info";
    case QueryKind::undesired: return "undesired";
  }
  return "undesired";
}

inline constexpr std::size_t kNoBlock = static_cast<std::size_t>(-1);

// User-side bookkeeping attached to every query; never sent to a node.
struct QueryTag {
  QueryKind kind = QueryKind::undesired;
  std::size_t repetition = 0;            // 1..kappa
  std::size_t round = 0;                 // number of files in the sum
  std::vector<std::size_t> other_files;  // files of the sum other than the requested one
  std::size_t desired_row = 0;           // logical row of the requested file
  std::size_t block = kNoBlock;          // undesired block feeding the sum
  std::size_t label = 0;                 // row label u of that block
};

struct PlannedQuery {
  Query query;
  QueryTag tag;
};

// nu virtual codewords z_u = sum over files m' of y^{(m')}_{base(m') + u - 1}.
struct UndesiredBlock {
  std::size_t repetition = 0;
  std::vector<std::size_t> files;      // 1-based, ascending
  std::vector<std::size_t> base_rows;  // logical base row per entry of files
  std::size_t size() const { return files.size(); }
};

struct QueryPlan {
  std::size_t requested_file = 0;  // 1-based
  std::size_t files = 0;
  std::size_t beta = 0;
  // row_permutation[m-1][logical row] = stored row of file m (Step-1 interleaving).
  std::vector<std::vector<std::size_t>> row_permutation;
  std::vector<UndesiredBlock> blocks;
  // per_node[j-1] is the ordered query list for node j.
  std::vector<std::vector<PlannedQuery>> per_node;

  std::vector<Query> queries_for(std::size_t node) const {
    std::vector<Query> out;
    for (const auto& pq : per_node.at(node - 1)) out.push_back(pq.query);
    return out;
  }
  std::size_t total_queries() const {
    std::size_t total = 0;
    for (const auto& list : per_node) total += list.size();
    return total;
  }
};

struct PlanOptions {
  bool shuffle = true;  // Step 4; disabling it exists only for negative controls
};

namespace detail {

// Lexicographic l-subsets of `pool`.
inline std::vector<std::vector<std::size_t>> subsets_of_size(
    const std::vector<std::size_t>& pool, std::size_t ell) {
  std::vector<std::vector<std::size_t>> out;
  if (ell > pool.size()) return out;
  std::vector<std::size_t> idx(ell);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<std::size_t> subset;
    for (std::size_t t : idx) subset.push_back(pool[t]);
    out.push_back(std::move(subset));
    std::ptrdiff_t t = static_cast<std::ptrdiff_t>(ell) - 1;
    while (t >= 0 && idx[t] == pool.size() - ell + static_cast<std::size_t>(t)) --t;
    if (t < 0) break;
    ++idx[t];
    for (std::size_t u = static_cast<std::size_t>(t) + 1; u < ell; ++u) idx[u] = idx[u - 1] + 1;
  }
  return out;
}

}  // namespace detail

// Builds the full query plan for retrieving file `requested` (1-based).
// The requested file takes the role of file 1 of the schedule; the others
// follow in ascending order.
inline QueryPlan build_queries(const ProtocolParams& params, std::size_t requested,
                               std::mt19937_64& rng, PlanOptions options = {}) {
  const std::size_t f = params.files();
  if (requested < 1 || requested > f) {
    throw ParameterError("requested file " + std::to_string(requested) +
                         " outside [1, " + std::to_string(f) + "]");
  }
  const std::size_t n = params.n(), kappa = params.kappa(), nu = params.nu();
  const std::size_t beta = params.beta();
  const std::size_t gap = nu - kappa;

  QueryPlan plan;
  plan.requested_file = requested;
  plan.files = f;
  plan.beta = beta;

  // Step 1: independent uniform interleaving of every file's rows.
  for (std::size_t m = 0; m < f; ++m) {
    std::vector<std::size_t> perm(beta);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    plan.row_permutation.push_back(std::move(perm));
  }

  std::vector<std::size_t> others;
  for (std::size_t m = 1; m <= f; ++m) {
    if (m != requested) others.push_back(m);
  }
  std::vector<std::vector<std::vector<std::size_t>>> subsets(f);
  for (std::size_t ell = 1; ell < f; ++ell) subsets[ell] = detail::subsets_of_size(others, ell);

  std::vector<uint64_t> u_table(f), d_table(f);
  for (std::size_t ell = 0; ell < f; ++ell) {
    u_table[ell] = u_of(ell, f, kappa, nu);
    d_table[ell] = d_of(ell, f, kappa, nu);
  }

  // Undesired blocks, indexed [repetition][l][subset][t]. Every file gets
  // fresh rows for each block it takes part in.
  std::vector<std::size_t> next_free(f + 1, 0);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> block_id;
  for (std::size_t i = 1; i <= kappa; ++i) {
    for (std::size_t ell = 1; ell < f; ++ell) {
      const uint64_t per_subset = u_table[ell] - u_table[ell - 1];
      for (std::size_t p = 0; p < subsets[ell].size(); ++p) {
        for (std::size_t t = 0; t < per_subset; ++t) {
          UndesiredBlock block;
          block.repetition = i;
          block.files = subsets[ell][p];
          for (std::size_t m : block.files) {
            block.base_rows.push_back(next_free[m]);
            next_free[m] += nu;
            if (next_free[m] > beta) throw Error("undesired rows exceed beta");
          }
          block_id[{i, ell, p, t}] = plan.blocks.size();
          plan.blocks.push_back(std::move(block));
        }
      }
    }
  }

  auto stored = [&](std::size_t file, std::size_t logical_row) {
    return (file - 1) * beta + plan.row_permutation[file - 1].at(logical_row);
  };
  auto block_positions = [&](const UndesiredBlock& block, std::size_t label,
                             std::vector<std::size_t>& out) {
    for (std::size_t t = 0; t < block.files.size(); ++t) {
      out.push_back(stored(block.files[t], block.base_rows[t] + label - 1));
    }
  };

  const uint64_t first_round_run = detail::checked_pow(kappa, f - 1);
  plan.per_node.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    auto& list = plan.per_node[j - 1];
    for (std::size_t i = 1; i <= kappa; ++i) {
      const std::size_t a_ij = params.a(i, j);
      // Round 1, requested file: the run of kappa^{f-1} rows labelled a_{i,j}.
      for (uint64_t t = 0; t < first_round_run; ++t) {
        PlannedQuery pq;
        pq.tag.kind = QueryKind::desired_first_round;
        pq.tag.repetition = i;
        pq.tag.round = 1;
        pq.tag.desired_row = (a_ij - 1) * first_round_run + t;
        pq.query.positions = {stored(requested, pq.tag.desired_row)};
        list.push_back(std::move(pq));
      }
      for (std::size_t ell = 1; ell < f; ++ell) {
        const uint64_t per_subset = u_table[ell] - u_table[ell - 1];
        // Undesired sums over every l-subset of the other files.
        for (std::size_t p = 0; p < subsets[ell].size(); ++p) {
          for (std::size_t t = 0; t < per_subset; ++t) {
            const std::size_t id = block_id.at({i, ell, p, t});
            for (std::size_t r = 1; r <= kappa; ++r) {
              PlannedQuery pq;
              pq.tag.kind = QueryKind::undesired;
              pq.tag.repetition = i;
              pq.tag.round = ell;
              pq.tag.other_files = subsets[ell][p];
              pq.tag.block = id;
              pq.tag.label = params.a(r, j);
              block_positions(plan.blocks[id], pq.tag.label, pq.query.positions);
              std::sort(pq.query.positions.begin(), pq.query.positions.end());
              list.push_back(std::move(pq));
            }
          }
        }
        // Round l+1: requested symbol plus an aligned sum of round l.
        for (std::size_t p = 0; p < subsets[ell].size(); ++p) {
          const uint64_t per_subset_desired = per_subset * gap;
          for (uint64_t t = 0; t < per_subset_desired; ++t) {
            const uint64_t group = d_table[ell - 1] + p * per_subset_desired + t;
            PlannedQuery pq;
            pq.tag.kind = QueryKind::desired_with_side_information;
            pq.tag.repetition = i;
            pq.tag.round = ell + 1;
            pq.tag.other_files = subsets[ell][p];
            pq.tag.desired_row = static_cast<std::size_t>(group * nu + a_ij - 1);
            pq.tag.block = block_id.at({i, ell, p, static_cast<std::size_t>(t / gap)});
            pq.tag.label = params.b(static_cast<std::size_t>(t % gap) + 1, j);
            pq.query.positions.push_back(stored(requested, pq.tag.desired_row));
            block_positions(plan.blocks[pq.tag.block], pq.tag.label, pq.query.positions);
            std::sort(pq.query.positions.begin(), pq.query.positions.end());
            list.push_back(std::move(pq));
          }
        }
      }
    }
    // Step 4: hide the schedule order from the node.
    if (options.shuffle) std::shuffle(list.begin(), list.end(), rng);
  }
  return plan;
}

// Inner products of the node's stored column with each 0/1 query.
inline Symbols node_respond(const Field& field, std::span<const uint32_t> stored_column,
                            std::span<const Query> queries) {
  Symbols responses;
  responses.reserve(queries.size());
  for (const auto& q : queries) {
    if (q.positions.empty()) throw ParameterError("empty query vector");
    uint32_t acc = 0;
    for (std::size_t p : q.positions) {
      if (p >= stored_column.size()) {
        throw ParameterError("query position " + std::to_string(p) +
                             " exceeds stored column length " +
                             std::to_string(stored_column.size()));
      }
      acc = field.add(acc, stored_column[p]);
    }
    responses.push_back(acc);
  }
  return responses;
}

// Aligned sums z_b[j] recovered from undesired blocks, with the round whose
// downloads produced them and the round that consumed them.
class SideLedger {
 public:
  struct Entry {
    uint32_t value = 0;
    std::size_t decoded_round = 0;
    std::size_t consumed_round = 0;  // 0 while unused
  };
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;  // block, label, node

  void record(const Key& key, uint32_t value, std::size_t round) {
    entries_[key] = Entry{value, round, 0};
  }

  // Consumption is legal only for sums decoded in a strictly earlier round.
  uint32_t consume(const Key& key, std::size_t round) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw DecodeIntegrityError("aligned sum for block " + std::to_string(std::get<0>(key)) +
                                 " was never decoded");
    }
    if (it->second.decoded_round >= round) {
      throw Error("aligned sum consumed in round " + std::to_string(round) +
                  " but decoded in round " + std::to_string(it->second.decoded_round));
    }
    it->second.consumed_round = round;
    return it->second.value;
  }

  const std::map<Key, Entry>& entries() const { return entries_; }
  std::size_t consumed() const {
    return static_cast<std::size_t>(std::count_if(
        entries_.begin(), entries_.end(), [](const auto& e) { return e.second.consumed_round != 0; }));
  }

 private:
  std::map<Key, Entry> entries_;
};

struct DecodeResult {
  FieldMatrix file;  // beta x k, rows in stored order
  SideLedger ledger;
};

// Recovers the requested file from responses[j-1] (ordered as
// plan.per_node[j-1]). Wherever a decoded codeword is observed on more than
// an information set, the extra coordinates are cross-checked.
inline DecodeResult decode(const std::vector<Symbols>& responses, const QueryPlan& plan,
                           const ProtocolParams& params) {
  const Field& field = params.code().field();
  const std::size_t n = params.n(), nu = params.nu(), beta = params.beta();
  if (responses.size() != n || plan.per_node.size() != n) {
    throw ParameterError("expected responses from all n nodes");
  }

  // block_values[block][(u-1)*n + (j-1)]: z_u[j] downloaded by node j.
  std::vector<std::vector<std::optional<uint32_t>>> block_values(
      plan.blocks.size(), std::vector<std::optional<uint32_t>>(nu * n));
  // desired[(row)*n + (j-1)]: requested-file symbol y_row[j].
  std::vector<std::optional<uint32_t>> desired(beta * n);
  struct PendingSum {
    std::size_t row, node, block, label, round;
    uint32_t value;
  };
  std::vector<PendingSum> pending;

  for (std::size_t j = 1; j <= n; ++j) {
    const auto& list = plan.per_node[j - 1];
    if (responses[j - 1].size() != list.size()) {
      throw DecodeIntegrityError("node " + std::to_string(j) + " returned " +
                                 std::to_string(responses[j - 1].size()) + " symbols for " +
                                 std::to_string(list.size()) + " queries");
    }
    for (std::size_t q = 0; q < list.size(); ++q) {
      const QueryTag& tag = list[q].tag;
      const uint32_t value = responses[j - 1][q];
      if (!field.contains(value)) throw DecodeIntegrityError("response outside the field");
      switch (tag.kind) {
        case QueryKind::desired_first_round:
          desired[tag.desired_row * n + (j - 1)] = value;
          break;
        case QueryKind::undesired:
          block_values[tag.block][(tag.label - 1) * n + (j - 1)] = value;
          break;
        case QueryKind::desired_with_side_information:
          pending.push_back({tag.desired_row, j, tag.block, tag.label, tag.round, value});
          break;
      }
    }
  }

  // Decodes the codeword whose known coordinates are given; checks them all.
  Symbols on_set(params.k());
  auto decode_word = [&](std::size_t label, auto&& value_at) -> Symbols {
    const auto& dec = params.decoder(label);
    std::size_t t = 0;
    for (std::size_t j : dec.coordinates()) {
      const std::optional<uint32_t> v = value_at(j);
      if (!v) throw DecodeIntegrityError("missing symbol on an information set");
      on_set[t++] = *v;
    }
    Symbols word = dec.codeword(on_set);
    for (std::size_t j = 1; j <= n; ++j) {
      const std::optional<uint32_t> v = value_at(j);
      if (v && *v != word[j - 1]) {
        throw DecodeIntegrityError("node " + std::to_string(j) +
                                   " disagrees with the decoded codeword");
      }
    }
    return word;
  };

  DecodeResult result{FieldMatrix(field, beta, params.k()), SideLedger{}};

  // Side information: every z_u of every block, re-encoded at the nodes
  // that did not download it.
  for (std::size_t w = 0; w < plan.blocks.size(); ++w) {
    for (std::size_t u = 1; u <= nu; ++u) {
      const auto& values = block_values[w];
      const Symbols word =
          decode_word(u, [&](std::size_t j) { return values[(u - 1) * n + (j - 1)]; });
      for (std::size_t j = 1; j <= n; ++j) {
        if (!params.holders(u).contains(j)) {
          result.ledger.record({w, u, j}, word[j - 1], plan.blocks[w].size());
        }
      }
    }
  }

  for (const auto& s : pending) {
    const uint32_t aligned = result.ledger.consume({s.block, s.label, s.node}, s.round);
    desired[s.row * n + (s.node - 1)] = field.sub(s.value, aligned);
  }

  // Requested rows: row r carries label u and is held by the nodes S(u|A).
  const uint64_t first_round_rows = nu * detail::checked_pow(params.kappa(), params.files() - 1);
  const uint64_t first_round_run = first_round_rows / nu;
  const auto& pi = plan.row_permutation.at(plan.requested_file - 1);
  for (std::size_t r = 0; r < beta; ++r) {
    const std::size_t label =
        r < first_round_rows ? static_cast<std::size_t>(r / first_round_run) + 1 : r % nu + 1;
    auto value_at = [&](std::size_t j) { return desired[r * n + (j - 1)]; };
    const auto& dec = params.decoder(label);
    std::size_t t = 0;
    for (std::size_t j : dec.coordinates()) {
      const auto v = value_at(j);
      if (!v) throw DecodeIntegrityError("row " + std::to_string(r) + " is incomplete");
      on_set[t++] = *v;
    }
    decode_word(label, value_at);
    const Symbols message = dec.message(on_set);
    for (std::size_t c = 0; c < params.k(); ++c) result.file.set(pi[r], c, message[c]);
  }
  return result;
}

}  // namespace pircodex
