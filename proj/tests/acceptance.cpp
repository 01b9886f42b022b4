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

// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pircodex/pircodex.hpp"

namespace {

using namespace pircodex;

const Field kGF2 = Field::prime(2);

LinearCode example_code() {
  return code_from_generator(
      FieldMatrix::from_rows(kGF2, {{1, 0, 0, 1, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}}));
}

RateMatrix example_lambda() {
  return RateMatrix(2, {{0, 1, 1, 1, 1}, {1, 0, 0, 1, 1}, {1, 1, 1, 0, 0}});
}

struct Config {
  std::string name;
  LinearCode code;
  RateMatrix lambda;
  bool capacity_achieving;
};

std::vector<Config> recovery_matrix() {
  std::vector<Config> out;
  out.push_back({"example[5,3]", example_code(), example_lambda(), false});
  const LinearCode mds = code_mds(Field::prime(5), 5, 3);
  out.push_back({"mds[5,3]/gf(5)", mds, lambda_from_shifted_information_set(mds, {1, 2, 3}), true});
  const LinearCode ham = code_cyclic(kGF2, 7, {1, 1, 0, 1});
  out.push_back({"hamming[7,4]", ham,
                 *detail::lambda_by_automorphisms(ham, AutomorphismKind::cyclic_shifts), true});
  const LinearCode rm = code_reed_muller(1, 3);
  out.push_back({"rm(1,3)", rm,
                 *detail::lambda_by_automorphisms(rm, AutomorphismKind::rm_translations), true});
  return out;
}

// Each check appends failure details to `why` and returns false on failure.
using Check = std::function<bool(std::ostringstream& why)>;

bool ac1(std::ostringstream& why) {
  bool ok = mds_pir_capacity(5, 3, 2) == Rational(5, 8);
  if (!ok) why << "capacity(5,3,2) = " << to_fraction(mds_pir_capacity(5, 3, 2)) << "; ";
  for (std::size_t n = 2; n <= 10; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      if (mds_pir_capacity(n, k, 1) != Rational(1)) {
        ok = false;
        why << "capacity(" << n << "," << k << ",1) != 1; ";
      }
    }
  }
  return ok;
}

bool ac2(std::ostringstream& why) {
  bool ok = true;
  const auto v = validate_rate_matrix(example_lambda(), example_code());
  if (!v.valid) {
    ok = false;
    why << "example rate matrix rejected: " << v.reason << "; ";
  }
  const InterferencePair p = interference(example_lambda());
  const std::vector<std::vector<std::size_t>> a{{2, 1, 1, 1, 1}, {3, 3, 3, 2, 2}};
  const std::vector<std::vector<std::size_t>> b{{1, 2, 2, 3, 3}};
  if (p.a.to_rows() != a) ok = false, why << "A differs; ";
  if (p.b.to_rows() != b) ok = false, why << "B differs; ";
  if (s_set(p, 1) != CoordinateSet{2, 3, 4, 5}) ok = false, why << "S(1|A) differs; ";
  return ok;
}

bool ac3(std::ostringstream& why) {
  bool ok = true;
  const LinearCode c = example_code();
  const std::size_t d2 = generalized_hamming_weight(c, 2);
  if (d2 != 3) ok = false, why << "d_2 = " << d2 << "; ";
  const NecessaryCondition nc = necessary_condition(c);
  if (nc.status != ConditionStatus::fail || nc.failing_s != 2) {
    ok = false;
    why << "condition " << to_string(nc.status) << " at s=" << nc.failing_s << "; ";
  }
  for (std::size_t nu : {5u, 10u}) {
    const SearchResult r = search_rate_matrix(c, nu * 3 / 5, nu);
    if (r.status != SearchStatus::not_found) {
      ok = false;
      why << "search (" << nu * 3 / 5 << "," << nu << ") " << to_string(r.status) << "; ";
    }
  }
  return ok;
}

bool ac4(std::ostringstream& why) {
  bool ok = true;
  std::size_t sessions = 0;
  for (const Config& cfg : recovery_matrix()) {
    for (std::size_t f = 1; f <= 3; ++f) {
      const auto params = ProtocolParams::make(cfg.code, cfg.lambda, f);
      const std::size_t kappa = params.kappa(), nu = params.nu(), n = params.n();
      const uint64_t expected_download =
          kappa * n * (params.beta() - detail::checked_pow(kappa, f)) / (nu - kappa);
      const Rational expected_rate = achievable_rate(kappa, nu, n, params.k(), f);
      for (uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(derive_seed(seed, f));
        const FileSet files = FileSet::random(cfg.code.field(), f, params.beta(), params.k(), rng);
        const StorageArray storage = encode_storage(files, cfg.code);
        for (std::size_t m = 1; m <= f; ++m) {
          const SessionResult r = run_session(storage, params, m, derive_seed(seed, m, 7));
          ++sessions;
          std::string tag = cfg.name + " f=" + std::to_string(f) + " m=" + std::to_string(m) +
                            " seed=" + std::to_string(seed);
          if (r.decoded != files.files[m - 1]) ok = false, why << tag << " decode mismatch; ";
          if (r.download != expected_download) ok = false, why << tag << " download; ";
          if (r.rate != expected_rate) ok = false, why << tag << " rate; ";
          if (cfg.capacity_achieving && r.rate != mds_pir_capacity(n, params.k(), f)) {
            ok = false;
            why << tag << " rate below capacity; ";
          }
        }
      }
    }
  }
  why << sessions << " sessions";
  return ok;
}

bool ac5(std::ostringstream& why) {
  bool ok = true;
  std::size_t codes = 0, found = 0, equalities = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      std::set<std::vector<uint32_t>> classes;
      detail::for_each_rref(kGF2, n, k, [&](const FieldMatrix& g) {
        classes.insert(detail::canonical_form(g));
      });
      for (const auto& flat : classes) {
        const LinearCode code = code_from_generator(detail::matrix_from_flat(kGF2, k, n, flat));
        ++codes;
        for (std::size_t nu = 2; nu <= 2 * n; ++nu) {
          for (std::size_t kappa = 1; kappa < nu; ++kappa) {
            if (kappa * n < k * nu) continue;
            const SearchResult r = search_rate_matrix(code, kappa, nu);
            if (r.status != SearchStatus::found) continue;
            ++found;
            if (!validate_rate_matrix(*r.matrix, code).valid) {
              ok = false;
              why << "invalid matrix returned; ";
            }
            for (std::size_t f = 1; f <= 5; ++f) {
              const Rational rate = achievable_rate(*r.matrix, code, f);
              const Rational cap = mds_pir_capacity(n, k, f);
              if (rate > cap) ok = false, why << "rate above capacity; ";
              if (f > 1 && (rate == cap) != (kappa * n == k * nu)) {
                ok = false;
                why << "equality case wrong at [" << n << "," << k << "] (" << kappa << ","
                    << nu << "); ";
              }
              if (f > 1 && rate == cap) ++equalities;
            }
          }
        }
      }
    }
  }
  why << codes << " codes, " << found << " matrices, " << equalities << " equalities";
  return ok && found > 0;
}

bool ac6(std::ostringstream& why) {
  bool ok = true;
  AuditOptions structural;
  structural.statistical = false;
  structural.trials = 5;
  structural.master_seed = 6;
  for (const Config& cfg : recovery_matrix()) {
    for (std::size_t f = 1; f <= 3; ++f) {
      if (!privacy_audit(cfg.code, cfg.lambda, f, structural).structural_pass) {
        ok = false;
        why << cfg.name << " f=" << f << " signatures differ; ";
      }
    }
  }
  AuditOptions full;
  full.trials = 10000;
  full.master_seed = 6;
  full.alpha = 0.01;
  const AuditReport good = privacy_audit(example_code(), example_lambda(), 2, full);
  if (!good.pass()) ok = false, why << "example audit failed; ";
  full.unshuffled_request = 2;
  const AuditReport bad = privacy_audit(example_code(), example_lambda(), 2, full);
  if (bad.pass()) ok = false, why << "negative control passed; ";
  double min_p = 1.0;
  for (const auto& t : bad.tests) min_p = std::min(min_p, t.p_value);
  why << "negative control min p = " << min_p;
  return ok;
}

bool ac7(std::ostringstream& why) {
  ScanOptions opts;
  opts.n_max = 5;
  opts.spot_lengths = {6, 7};
  opts.spot_dimensions = {2, 3};
  opts.spot_samples = 10;
  opts.seed = 7;
  const ScanReport report = scan_codes(opts);
  std::size_t spot = 0;
  for (const auto& row : report.rows) spot += row.spot_check;
  why << report.rows.size() << " classes (" << spot << " spot), " << report.disagreements
      << " disagreements, " << report.indeterminate << " indeterminate";
  return report.disagreements == 0 && report.indeterminate == 0;
}

bool ac8(std::ostringstream& why) {
  bool ok = true;
  const LinearCode mds = code_mds(Field::prime(5), 5, 3);
  for (std::size_t s = 1; s <= 3; ++s) {
    if (generalized_hamming_weight(mds, s) != 5 - 3 + s) ok = false, why << "mds d_" << s << "; ";
  }
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(4, n);
    const LinearCode c = oracle::random_binary_code(n, k, rng);
    for (std::size_t s = 1; s <= k; ++s) {
      if (generalized_hamming_weight(c, s) != oracle::binary_ghw_by_subspaces(c, s)) {
        ok = false;
        why << "[" << n << "," << k << "] d_" << s << "; ";
      }
    }
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"AC1 capacity identity", ac1},
      {"AC2 worked example rate matrix and interference", ac2},
      {"AC3 weight ruling and exhaustive search", ac3},
      {"AC4 end-to-end recovery and rate", ac4},
      {"AC5 rate dominance over searched matrices", ac5},
      {"AC6 privacy audit", ac6},
      {"AC7 small-length scan agreement", ac7},
      {"AC8 weight hierarchy oracle agreement", ac8},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    std::ostringstream why;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = check(why);
    } catch (const std::exception& e) {
      why << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!ok) ++failures;
    std::printf("[%s] %s (%.2fs) %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                why.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
