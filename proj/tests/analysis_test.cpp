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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pircodex/pircodex.hpp"

namespace pircodex {
namespace {

const Field kGF2 = Field::prime(2);

LinearCode example_code() {
  return code_from_generator(
      FieldMatrix::from_rows(kGF2, {{1, 0, 0, 1, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}}));
}

RateMatrix example_lambda() {
  return RateMatrix(2, {{0, 1, 1, 1, 1}, {1, 0, 0, 1, 1}, {1, 1, 1, 0, 0}});
}

TEST(Capacity, ExactValues) {
  EXPECT_EQ(mds_pir_capacity(5, 3, 2), Rational(5, 8));
  for (std::size_t n = 2; n <= 10; ++n) {
    for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(mds_pir_capacity(n, k, 1), Rational(1));
  }
  EXPECT_EQ(mds_pir_capacity(4, 4, 3), Rational(1));
  EXPECT_EQ(capacity_limit(5, 3), Rational(2, 5));
  EXPECT_THROW(mds_pir_capacity(3, 4, 1), ParameterError);
  EXPECT_THROW(mds_pir_capacity(3, 0, 1), ParameterError);
  EXPECT_THROW(mds_pir_capacity(3, 2, 0), ParameterError);
  EXPECT_EQ(to_fraction(Rational(5, 8)), "5/8");
  EXPECT_EQ(describe(Rational(5, 8)), "5/8 (0.625)");
  EXPECT_EQ(to_fraction(Rational(1)), "1/1");
}

TEST(Rate, ExactValues) {
  EXPECT_EQ(achievable_rate(example_lambda(), example_code(), 2), Rational(27, 50));
  const LinearCode mds = code_mds(Field::prime(5), 5, 3);
  const RateMatrix l35 = lambda_from_shifted_information_set(mds, {1, 2, 3});
  EXPECT_EQ(achievable_rate(l35, mds, 2), Rational(5, 8));
  EXPECT_EQ(achievable_rate(l35, mds, 2), mds_pir_capacity(5, 3, 2));
  // f = 1: nu k / (kappa n).
  EXPECT_EQ(achievable_rate(example_lambda(), example_code(), 1), Rational(9, 10));
  const RateMatrix bad(2, {{1, 1, 0, 1, 0}, {1, 1, 1, 1, 1}, {0, 0, 1, 0, 1}});
  EXPECT_THROW(achievable_rate(bad, example_code(), 2), ParameterError);
}

// Rate <= capacity with equality iff kappa/nu = k/n, over all parameter
// combinations allowed by kappa/nu >= k/n.
TEST(Rate, DominatedByCapacity) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t nu = 2; nu <= 9; ++nu) {
        for (std::size_t kappa = 1; kappa < nu; ++kappa) {
          if (kappa * n < k * nu) continue;
          for (std::size_t f = 1; f <= 6; ++f) {
            const Rational r = achievable_rate(kappa, nu, n, k, f);
            const Rational c = mds_pir_capacity(n, k, f);
            EXPECT_LE(r, c);
            if (f > 1) { EXPECT_EQ(r == c, kappa * n == k * nu); }
          }
        }
      }
    }
  }
}

// The rate decreases towards its f -> infinity limit. The gap to the limit
// is exactly limit * x^f / (1 - x^f) with x = kappa/nu, so the f = 50 value
// is within 1e-12 of the limit only when x^50 is that small.
TEST(Rate, MonotoneAndLimit) {
  for (auto [kappa, nu, n, k] : {std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>{2, 3, 5, 3},
                                 {3, 5, 5, 3}, {4, 7, 7, 4}, {1, 2, 4, 2}, {1, 3, 5, 1}}) {
    Rational previous = achievable_rate(kappa, nu, n, k, 1);
    for (std::size_t f = 2; f <= 12; ++f) {
      const Rational r = achievable_rate(kappa, nu, n, k, f);
      EXPECT_LE(r, previous);
      previous = r;
    }
    const Rational limit = achievable_rate_limit(kappa, nu, n, k);
    const Rational x = make_rational(kappa, nu);
    const Rational x50 = rational_pow(x, 50);
    EXPECT_EQ(achievable_rate(kappa, nu, n, k, 50) - limit, limit * x50 / (1 - x50));
    if (to_double(x50) < 1e-13) {
      EXPECT_NEAR(to_double(achievable_rate(kappa, nu, n, k, 50)), to_double(limit), 1e-12);
    }
  }
  EXPECT_NEAR(to_double(mds_pir_capacity(2, 1, 50)), to_double(capacity_limit(2, 1)), 1e-12);
  EXPECT_NEAR(to_double(mds_pir_capacity(7, 2, 50)), to_double(capacity_limit(7, 2)), 1e-12);
}

TEST(NecessaryCondition, Rulings) {
  const NecessaryCondition ex = necessary_condition(example_code());
  EXPECT_EQ(ex.status, ConditionStatus::fail);
  EXPECT_EQ(ex.failing_s, 2u);
  EXPECT_EQ(ex.failing_weight, 3u);
  const NecessaryCondition mds = necessary_condition(code_mds(Field::prime(5), 5, 3));
  EXPECT_EQ(mds.status, ConditionStatus::pass);
  EXPECT_EQ(mds.weights, (std::vector<std::size_t>{3, 4, 5}));
  const NecessaryCondition full = necessary_condition(code_mds(kGF2, 4, 4));
  EXPECT_EQ(full.status, ConditionStatus::pass);
  EXPECT_EQ(full.weights, (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_THROW(necessary_condition(example_code(), 4), ParameterError);
  EXPECT_EQ(necessary_condition(code_reed_muller(2, 6), 2, 1000).status,
            ConditionStatus::indeterminate);
}

TEST(DistanceRate, Values) {
  EXPECT_EQ(distance_rate(example_code(), 2), Rational(16, 35));
  EXPECT_EQ(distance_rate(code_mds(Field::prime(5), 5, 3), 2), Rational(5, 8));
  EXPECT_EQ(distance_rate(code_repetition(kGF2, 2), 1), Rational(1));
  const LinearCode weak = code_from_generator(FieldMatrix::from_rows(kGF2, {{1, 0, 0}, {0, 1, 1}}));
  EXPECT_THROW(distance_rate(weak, 2), DomainError);
}

TEST(Classify, KnownCodes) {
  const Classification ham = classify(code_cyclic(kGF2, 7, {1, 1, 0, 1}));
  EXPECT_EQ(ham.verdict, Verdict::capacity_achieving);
  EXPECT_EQ(ham.method, "automorphisms:cyclic_shifts");
  const Classification ex = classify(example_code());
  EXPECT_EQ(ex.verdict, Verdict::ruled_out);
  EXPECT_EQ(ex.failing_s, 2u);
  EXPECT_EQ(ex.failing_weight, 3u);
  const LinearCode mds = code_mds(Field::prime(5), 5, 3);
  const Classification m = classify(mds);
  ASSERT_EQ(m.verdict, Verdict::capacity_achieving);
  ASSERT_TRUE(m.lambda.has_value());
  EXPECT_EQ(m.lambda->kappa(), 3u);
  EXPECT_EQ(m.lambda->nu(), 5u);
  EXPECT_TRUE(validate_rate_matrix(*m.lambda, mds).valid);
  const Classification rm = classify(code_reed_muller(1, 3));
  EXPECT_EQ(rm.method, "automorphisms:rm_translations");
  EXPECT_EQ(classify(code_mds(kGF2, 3, 3)).verdict, Verdict::capacity_achieving);
}

// Any capacity-achieving verdict carries a valid matrix with kappa/nu = k/n,
// and a ruling always comes with d_s < (n/k) s.
TEST(Classify, VerdictsAreConsistent) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng() % 5;
    const std::size_t k = 1 + rng() % (n - 1);
    const LinearCode c = oracle::random_binary_code(n, k, rng);
    const Classification cl = classify(c);
    if (cl.verdict == Verdict::capacity_achieving) {
      ASSERT_TRUE(cl.lambda.has_value());
      EXPECT_TRUE(validate_rate_matrix(*cl.lambda, c).valid);
      EXPECT_EQ(cl.lambda->kappa() * n, cl.lambda->nu() * k);
    } else if (cl.verdict == Verdict::ruled_out) {
      EXPECT_LT(k * generalized_hamming_weight(c, cl.failing_s), n * cl.failing_s);
      const std::size_t g = std::gcd(n, k);
      EXPECT_NE(search_rate_matrix(c, k / g, n / g).status, SearchStatus::found);
    }
  }
}

uint64_t gaussian_binomial_2(std::size_t n, std::size_t k) {
  uint64_t num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= (uint64_t{1} << (n - i)) - 1;
    den *= (uint64_t{1} << (i + 1)) - 1;
  }
  return num / den;
}

TEST(Scan, EnumerationCountsAndCanonicalForm) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t count = 0;
      detail::for_each_rref(kGF2, n, k, [&](const FieldMatrix& g) {
        ++count;
        EXPECT_EQ(reduced_row_echelon(g).reduced, g);
      });
      EXPECT_EQ(count, gaussian_binomial_2(n, k)) << n << "," << k;
    }
  }
  const LinearCode ex = example_code();
  const auto canon = detail::canonical_form(ex.generator());
  std::mt19937_64 rng(3);
  std::vector<std::size_t> perm{0, 1, 2, 3, 4};
  for (int t = 0; t < 10; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(detail::canonical_form(ex.generator().select_columns(perm)), canon);
  }
}

TEST(Scan, SmallLengthsAgree) {
  ScanOptions opts;
  opts.n_max = 5;
  const ScanReport report = scan_codes(opts);
  EXPECT_EQ(report.disagreements, 0u);
  EXPECT_EQ(report.indeterminate, 0u);
  // The example code's class: weight condition fails, no matrix exists.
  const std::string canon = generator_string(detail::matrix_from_flat(
      kGF2, 3, 5, detail::canonical_form(example_code().generator())));
  bool seen = false;
  for (const auto& row : report.rows) {
    if (row.condition == ConditionStatus::fail) { EXPECT_NE(row.search, SearchStatus::found); }
    if (row.n == 5 && row.k == 3 && row.generator == canon) {
      seen = true;
      EXPECT_EQ(row.condition, ConditionStatus::fail);
      EXPECT_EQ(row.search, SearchStatus::not_found);
    }
  }
  EXPECT_TRUE(seen);
  ScanOptions too_long;
  too_long.n_max = 9;
  EXPECT_THROW(scan_codes(too_long), ParameterError);
}

}  // namespace
}  // namespace pircodex
