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

// In-memory coded storage: f files of beta stripes, each stripe encoded into
// one codeword, node j holding coordinate j of every codeword. Retrieval
// sessions and the privacy audit run against this array.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "pircodex/errors.hpp"
#include "pircodex/field_matrix.hpp"
#include "pircodex/linear_code.hpp"
#include "pircodex/protocol.hpp"
#include "pircodex/rate_matrix.hpp"
#include "pircodex/rational.hpp"

namespace pircodex {

// splitmix64 finalizer; used to derive independent per-trial seeds.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

// FNV-1a over the little-endian bytes of each symbol.
inline uint64_t fnv1a(std::span<const uint32_t> symbols, uint64_t h = 0xCBF29CE484222325ull) {
  for (uint32_t s : symbols) {
    for (int byte = 0; byte < 4; ++byte) {
      h ^= (s >> (8 * byte)) & 0xFFu;
      h *= 0x100000001B3ull;
    }
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int t = 15; t >= 0; --t, v >>= 4) out[static_cast<std::size_t>(t)] = digits[v & 0xF];
  return out;
}

struct FileSet {
  Field field;
  std::size_t beta = 0;
  std::size_t k = 0;
  std::vector<FieldMatrix> files;  // each beta x k

  std::size_t count() const { return files.size(); }

  static FileSet zeros(Field field, std::size_t f, std::size_t beta, std::size_t k) {
    return FileSet{field, beta, k, std::vector<FieldMatrix>(f, FieldMatrix(field, beta, k))};
  }

  static FileSet random(Field field, std::size_t f, std::size_t beta, std::size_t k,
                        std::mt19937_64& rng) {
    FileSet set = zeros(field, f, beta, k);
    std::uniform_int_distribution<uint64_t> pick(0, field.order() - 1);
    for (auto& file : set.files) {
      for (std::size_t r = 0; r < beta; ++r) {
        for (std::size_t c = 0; c < k; ++c) file.set(r, c, static_cast<uint32_t>(pick(rng)));
      }
    }
    return set;
  }
};

class StorageArray {
 public:
  StorageArray(FieldMatrix array, std::size_t files, std::size_t beta)
      : array_(std::move(array)), files_(files), beta_(beta) {}

  const FieldMatrix& array() const { return array_; }
  std::size_t files() const { return files_; }
  std::size_t beta() const { return beta_; }
  std::size_t nodes() const { return array_.cols(); }

  // Content of node j (1-based): file 1 rows, then file 2 rows, ...
  std::vector<uint32_t> column(std::size_t j) const {
    std::vector<uint32_t> out(array_.rows());
    for (std::size_t r = 0; r < array_.rows(); ++r) out[r] = array_(r, j - 1);
    return out;
  }

 private:
  FieldMatrix array_;
  std::size_t files_;
  std::size_t beta_;
};

inline StorageArray encode_storage(const FileSet& files, const LinearCode& code) {
  if (files.field != code.field()) throw ParameterError("file field differs from code field");
  if (files.k != code.k()) {
    throw ParameterError("file width " + std::to_string(files.k) + " differs from k = " +
                         std::to_string(code.k()));
  }
  FieldMatrix array(code.field(), files.beta * files.count(), code.n());
  for (std::size_t m = 0; m < files.count(); ++m) {
    const FieldMatrix& x = files.files[m];
    if (x.rows() != files.beta || x.cols() != files.k) {
      throw ParameterError("file " + std::to_string(m + 1) + " has the wrong shape");
    }
    for (std::size_t r = 0; r < files.beta; ++r) {
      const Symbols word = row_times(code.generator(), x.row(r));
      std::copy(word.begin(), word.end(), array.row(m * files.beta + r).begin());
    }
  }
  return StorageArray(std::move(array), files.count(), files.beta);
}

struct SessionTrace {
  uint64_t seed = 0;
  std::size_t requested_file = 0;
  std::size_t files = 0;
  std::size_t beta = 0;
  std::size_t kappa = 0;
  std::size_t nu = 0;
  std::vector<std::size_t> queries_per_node;
  std::vector<uint64_t> response_digest;  // per node, FNV-1a of the responses
  std::size_t aligned_sums_decoded = 0;
  std::size_t aligned_sums_consumed = 0;
  uint64_t decoded_digest = 0;
  QueryPlan plan;
};

struct SessionResult {
  FieldMatrix decoded;
  uint64_t download = 0;
  Rational rate;
  SessionTrace trace;
};

inline SessionResult run_session(const StorageArray& storage, const ProtocolParams& params,
                                 std::size_t requested, uint64_t seed) {
  if (storage.beta() != params.beta()) {
    throw ParameterError("storage holds " + std::to_string(storage.beta()) +
                         " stripes per file; the protocol needs nu^f = " +
                         std::to_string(params.beta()));
  }
  if (storage.files() != params.files()) throw ParameterError("file count mismatch");
  if (storage.nodes() != params.n()) throw ParameterError("node count differs from n");

  std::mt19937_64 rng(seed);
  QueryPlan plan = build_queries(params, requested, rng);
  std::vector<Symbols> responses;
  SessionTrace trace;
  for (std::size_t j = 1; j <= params.n(); ++j) {
    const std::vector<uint32_t> column = storage.column(j);
    const std::vector<Query> queries = plan.queries_for(j);
    responses.push_back(node_respond(params.code().field(), column, queries));
    trace.queries_per_node.push_back(queries.size());
    trace.response_digest.push_back(fnv1a(responses.back()));
  }
  DecodeResult decoded = decode(responses, plan, params);

  const uint64_t download = plan.total_queries();
  trace.seed = seed;
  trace.requested_file = requested;
  trace.files = params.files();
  trace.beta = params.beta();
  trace.kappa = params.kappa();
  trace.nu = params.nu();
  trace.aligned_sums_decoded = decoded.ledger.entries().size();
  trace.aligned_sums_consumed = decoded.ledger.consumed();
  uint64_t h = 0xCBF29CE484222325ull;
  for (std::size_t r = 0; r < decoded.file.rows(); ++r) h = fnv1a(decoded.file.row(r), h);
  trace.decoded_digest = h;
  trace.plan = std::move(plan);

  Rational rate(static_cast<int64_t>(params.beta() * params.k()), static_cast<int64_t>(download));
  return SessionResult{std::move(decoded.file), download, rate, std::move(trace)};
}

inline SessionResult run_session(const StorageArray& storage, const LinearCode& code,
                                 const RateMatrix& lambda, std::size_t f, std::size_t requested,
                                 uint64_t seed) {
  return run_session(storage, ProtocolParams::make(code, lambda, f), requested, seed);
}

// What one node can see of a query list, independent of order and of the
// random interleaving: how often each file combination is queried, how many
// stored positions of each file are touched, and how often positions repeat.
struct NodeSignature {
  std::map<std::vector<std::size_t>, std::size_t> subset_counts;
  std::vector<std::size_t> file_touches;
  std::map<std::size_t, std::size_t> multiplicity_histogram;  // times touched -> positions
  std::size_t queries = 0;

  friend bool operator==(const NodeSignature&, const NodeSignature&) = default;
};

inline NodeSignature node_signature(const std::vector<PlannedQuery>& list, std::size_t files,
                                    std::size_t beta) {
  NodeSignature sig;
  sig.file_touches.assign(files, 0);
  std::vector<std::size_t> touched(files * beta, 0);
  for (const auto& pq : list) {
    std::vector<std::size_t> subset;
    for (std::size_t p : pq.query.positions) {
      const std::size_t file = p / beta + 1;
      if (subset.empty() || subset.back() != file) subset.push_back(file);
      ++sig.file_touches[file - 1];
      ++touched.at(p);
    }
    ++sig.subset_counts[subset];
  }
  for (std::size_t c : touched) {
    if (c != 0) ++sig.multiplicity_histogram[c];
  }
  sig.queries = list.size();
  return sig;
}

struct ChiSquareResult {
  std::string feature;
  std::size_t node = 0;
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
  bool pass = true;
};

// Pearson test of homogeneity on an (m x category) table of counts. Empty
// categories are dropped.
inline ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<uint64_t>>& table) {
  ChiSquareResult out;
  const std::size_t groups = table.size();
  if (groups < 2) return out;
  const std::size_t width = table.front().size();
  std::vector<double> col_total(width, 0), row_total(groups, 0);
  double total = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t c = 0; c < width; ++c) {
      col_total[c] += static_cast<double>(table[g][c]);
      row_total[g] += static_cast<double>(table[g][c]);
    }
    total += row_total[g];
  }
  std::size_t used = 0;
  for (std::size_t c = 0; c < width; ++c) {
    if (col_total[c] == 0) continue;
    ++used;
    for (std::size_t g = 0; g < groups; ++g) {
      const double expected = row_total[g] * col_total[c] / total;
      const double diff = static_cast<double>(table[g][c]) - expected;
      out.statistic += diff * diff / expected;
    }
  }
  if (used < 2) return out;
  out.dof = (groups - 1) * (used - 1);
  boost::math::chi_squared dist(static_cast<double>(out.dof));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

struct AuditOptions {
  std::size_t trials = 1000;  // per requested file
  uint64_t master_seed = 0;
  double alpha = 0.01;        // family-wise significance level
  std::size_t jobs = 0;       // 0 = hardware concurrency
  bool statistical = true;
  // Negative control: build plans for this file without the Step-4 shuffle.
  std::optional<std::size_t> unshuffled_request;
};

struct AuditReport {
  std::size_t files = 0;
  std::size_t trials = 0;
  uint64_t master_seed = 0;
  double alpha = 0.01;
  double per_test_alpha = 0.01;
  std::optional<std::size_t> unshuffled_request;
  std::vector<std::vector<NodeSignature>> signatures;  // [m-1][j-1]
  bool structural_pass = true;
  std::vector<ChiSquareResult> tests;
  bool statistical_pass = true;

  bool pass() const { return structural_pass && statistical_pass; }
};

inline constexpr std::size_t kAuditRowBins = 16;

// Two-part audit. The structural part compares node signatures across
// requested files for one plan each. The statistical part draws `trials`
// plans per requested file and, per node, tests whether the first query the
// node receives depends on the requested file: once by its file combination
// and once by the (file, row bin) of its lowest touched position.
inline AuditReport privacy_audit(const ProtocolParams& params, const AuditOptions& options) {
  if (options.statistical && options.trials < 1000) {
    throw PreconditionError("the statistical audit needs at least 1000 trials");
  }
  const std::size_t f = params.files(), n = params.n(), beta = params.beta();
  AuditReport report;
  report.files = f;
  report.trials = options.trials;
  report.master_seed = options.master_seed;
  report.alpha = options.alpha;
  report.unshuffled_request = options.unshuffled_request;

  auto plan_options = [&](std::size_t m) {
    PlanOptions po;
    po.shuffle = !(options.unshuffled_request && *options.unshuffled_request == m);
    return po;
  };

  for (std::size_t m = 1; m <= f; ++m) {
    std::mt19937_64 rng(derive_seed(options.master_seed, m, 0xA5A5));
    const QueryPlan plan = build_queries(params, m, rng, plan_options(m));
    std::vector<NodeSignature> per_node;
    for (std::size_t j = 0; j < n; ++j) per_node.push_back(node_signature(plan.per_node[j], f, beta));
    report.signatures.push_back(std::move(per_node));
  }
  for (std::size_t m = 1; m < f; ++m) {
    if (report.signatures[m] != report.signatures[0]) report.structural_pass = false;
  }

  if (!options.statistical || f < 2) return report;

  // Feature categories: subsets of files as bit masks; (file, bin) pairs.
  const std::size_t bins = std::min(kAuditRowBins, beta);
  const std::size_t subset_categories = std::size_t{1} << f;
  const std::size_t bin_categories = f * bins;
  const std::size_t trials = options.trials;
  // outcomes[(m-1)][trial][node] = {subset mask, file-bin index}
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> outcomes(
      f, std::vector<std::pair<uint32_t, uint32_t>>(trials * n));

  std::size_t jobs = options.jobs ? options.jobs : std::thread::hardware_concurrency();
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  auto worker = [&](std::size_t w) {
    for (std::size_t t = w; t < trials; t += jobs) {
      for (std::size_t m = 1; m <= f; ++m) {
        std::mt19937_64 rng(derive_seed(options.master_seed, m, t + 1));
        const QueryPlan plan = build_queries(params, m, rng, plan_options(m));
        for (std::size_t j = 0; j < n; ++j) {
          const auto& positions = plan.per_node[j].front().query.positions;
          uint32_t mask = 0;
          for (std::size_t p : positions) mask |= 1u << (p / beta);
          const std::size_t low = positions.front();
          const std::size_t bin = (low % beta) * bins / beta;
          outcomes[m - 1][t * n + j] = {mask, static_cast<uint32_t>((low / beta) * bins + bin)};
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < jobs; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& th : pool) th.join();

  const std::size_t test_count = 2 * n;
  report.per_test_alpha = options.alpha / static_cast<double>(test_count);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<uint64_t>> by_subset(f, std::vector<uint64_t>(subset_categories, 0));
    std::vector<std::vector<uint64_t>> by_bin(f, std::vector<uint64_t>(bin_categories, 0));
    for (std::size_t m = 0; m < f; ++m) {
      for (std::size_t t = 0; t < trials; ++t) {
        const auto& [mask, bin] = outcomes[m][t * n + j];
        ++by_subset[m][mask];
        ++by_bin[m][bin];
      }
    }
    for (auto [name, table] : {std::pair{"file_subset", &by_subset}, std::pair{"row_bin", &by_bin}}) {
      ChiSquareResult r = chi_square_homogeneity(*table);
      r.feature = name;
      r.node = j + 1;
      r.pass = r.p_value >= report.per_test_alpha;
      if (!r.pass) report.statistical_pass = false;
      report.tests.push_back(std::move(r));
    }
  }
  return report;
}

inline AuditReport privacy_audit(const LinearCode& code, const RateMatrix& lambda, std::size_t f,
                                 const AuditOptions& options) {
  return privacy_audit(ProtocolParams::make(code, lambda, f), options);
}

}  // namespace pircodex
