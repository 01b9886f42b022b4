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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pircodex/code_io.hpp"
#include "pircodex/linear_code.hpp"

namespace pircodex {
namespace {

const Field kGF2 = Field::prime(2);

LinearCode example_code() {
  return code_from_generator(
      FieldMatrix::from_rows(kGF2, {{1, 0, 0, 1, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}}));
}

uint64_t binomial(uint64_t n, uint64_t r) {
  uint64_t out = 1;
  for (uint64_t t = 1; t <= r; ++t) out = out * (n - r + t) / t;
  return out;
}

TEST(CoordinateSet, BasicsAndValidation) {
  const CoordinateSet s{3, 1, 2};
  EXPECT_EQ(s.to_string(), "{1,2,3}");
  EXPECT_EQ(s.mask(), 0b111u);
  EXPECT_EQ(CoordinateSet::from_mask(0b10110), (CoordinateSet{2, 3, 5}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(4));
  EXPECT_TRUE((CoordinateSet{1, 3}).is_subset_of(s));
  EXPECT_THROW(CoordinateSet({0, 1}), ParameterError);
  EXPECT_THROW(CoordinateSet({1, 1}), ParameterError);
}

TEST(Permutation, RotationAndApply) {
  const Permutation rot = Permutation::rotation(5, 1);
  EXPECT_EQ(rot(1), 2u);
  EXPECT_EQ(rot(5), 1u);
  EXPECT_EQ(rot.apply(CoordinateSet{4, 5}), (CoordinateSet{1, 5}));
  EXPECT_THROW(Permutation({1, 1, 2}), ParameterError);
  EXPECT_THROW(Permutation({0, 1}), ParameterError);
}

TEST(LinearCode, ExampleEncoding) {
  const LinearCode c = example_code();
  EXPECT_EQ(c.n(), 5u);
  EXPECT_EQ(c.k(), 3u);
  EXPECT_EQ(encode(c, std::vector<uint32_t>{1, 0, 1}), (Symbols{1, 0, 1, 1, 1}));
  EXPECT_THROW(encode(c, std::vector<uint32_t>{1, 0}), ParameterError);
}

TEST(LinearCode, RejectsDegenerateGenerators) {
  EXPECT_THROW(code_from_generator(FieldMatrix::from_rows(kGF2, {{1, 1, 0}, {1, 1, 0}})),
               InvalidCodeError);
  EXPECT_THROW(code_from_generator(FieldMatrix::from_rows(kGF2, {{1, 0}, {0, 1}, {1, 1}})),
               InvalidCodeError);
}

TEST(LinearCode, CyclicHamming) {
  const LinearCode h = code_cyclic(kGF2, 7, {1, 1, 0, 1});
  EXPECT_EQ(h.k(), 4u);
  EXPECT_EQ(h.family(), CodeFamily::cyclic);
  EXPECT_EQ(min_distance(h), 3u);
  EXPECT_EQ(weight_hierarchy(h), (std::vector<std::size_t>{3, 5, 6, 7}));
  EXPECT_TRUE(is_automorphism(h, Permutation::rotation(7, 1)));
  EXPECT_THROW(code_cyclic(kGF2, 7, {1, 1, 1}), InvalidPolynomialError);
  // x^4 - 1 = (x - 1)(x + 1)(x - 2)(x + 2) over GF(5); (x - 1)(x - 2) = x^2 + 2x + 2.
  const LinearCode c5 = code_cyclic(Field::prime(5), 4, {2, 2, 1});
  EXPECT_EQ(c5.k(), 2u);
  EXPECT_TRUE(is_automorphism(c5, Permutation::rotation(4, 1)));
}

TEST(LinearCode, ReedMullerParameters) {
  for (unsigned e = 1; e <= 5; ++e) {
    for (unsigned r = 0; r <= e; ++r) {
      const LinearCode rm = code_reed_muller(r, e);
      uint64_t k = 0;
      for (unsigned i = 0; i <= r; ++i) k += binomial(e, i);
      EXPECT_EQ(rm.n(), 1u << e);
      EXPECT_EQ(rm.k(), k);
      if (rm.k() <= 16) { EXPECT_EQ(min_distance(rm), 1u << (e - r)) << r << "," << e; }
    }
  }
  EXPECT_THROW(code_reed_muller(3, 2), ParameterError);
  const auto family = automorphism_family(code_reed_muller(1, 3), AutomorphismKind::rm_translations);
  EXPECT_EQ(family.size(), 8u);
  for (const auto& p : family) EXPECT_TRUE(is_automorphism(code_reed_muller(1, 3), p));
}

TEST(LinearCode, MdsConstruction) {
  const LinearCode m = code_mds(Field::prime(5), 5, 3);
  EXPECT_EQ(min_distance(m), 3u);
  EXPECT_EQ(information_sets(m).size(), 10u);
  EXPECT_EQ(m.generator(), parse_code(read_text_file(PIRCODEX_SAMPLES_DIR "/mds553.code")).generator());
  const LinearCode m4 = code_mds(Field::binary_extension(2), 4, 2);
  EXPECT_EQ(min_distance(m4), 3u);
  const LinearCode m16 = code_mds(Field::binary_extension(4), 10, 4);
  EXPECT_EQ(min_distance(m16), 7u);
  EXPECT_THROW(code_mds(Field::prime(3), 5, 2), FieldTooSmallError);
  EXPECT_EQ(code_mds(Field::prime(3), 4, 4).generator(), FieldMatrix::identity(Field::prime(3), 4));
}

TEST(LinearCode, Repetition) {
  const LinearCode r = code_repetition(Field::prime(3), 4);
  EXPECT_EQ(r.k(), 1u);
  EXPECT_EQ(min_distance(r), 4u);
  EXPECT_EQ(information_sets(r).size(), 4u);
}

TEST(InformationSets, ExampleCode) {
  const LinearCode c = example_code();
  EXPECT_TRUE(is_information_set(c, {1, 2, 3}));
  EXPECT_FALSE(is_information_set(c, {1, 2, 4}));
  EXPECT_THROW(is_information_set(c, {1, 2}), ParameterError);
  EXPECT_FALSE(contains_information_set(c, {1, 2, 4}));
  EXPECT_TRUE(contains_information_set(c, {2, 3, 4, 5}));
  EXPECT_EQ(information_set_within(c, {2, 3, 4, 5}), (CoordinateSet{2, 3, 4}));
  EXPECT_FALSE(information_set_within(c, {1, 2, 4}).has_value());
  // Brute force over masks with the independent oracle.
  std::size_t count = 0;
  for (uint32_t mask = 0; mask < 32; ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    const bool info = oracle::binary_mask_has_information_set(c, mask);
    EXPECT_EQ(info, is_information_set(c, CoordinateSet::from_mask(mask)));
    count += info;
  }
  EXPECT_EQ(information_sets(c).size(), count);
}

TEST(InformationSets, DecoderRoundTrip) {
  const LinearCode c = code_mds(Field::binary_extension(3), 7, 3);
  std::mt19937_64 rng(5);
  for (const auto& info : information_sets(c)) {
    const InformationSetDecoder dec(c, info);
    Symbols msg(3);
    for (auto& x : msg) x = static_cast<uint32_t>(rng() % 8);
    const Symbols word = encode(c, msg);
    Symbols on_set;
    for (std::size_t j : info) on_set.push_back(word[j - 1]);
    EXPECT_EQ(dec.message(on_set), msg);
    EXPECT_EQ(dec.codeword(on_set), word);
  }
}

TEST(Weights, ExampleCode) {
  const LinearCode c = example_code();
  EXPECT_EQ(min_distance(c), 2u);
  EXPECT_EQ(generalized_hamming_weight(c, 2), 3u);
  EXPECT_EQ(generalized_hamming_weight(c, 3), 5u);
  EXPECT_THROW(generalized_hamming_weight(c, 0), ParameterError);
  EXPECT_THROW(generalized_hamming_weight(c, 4), ParameterError);
}

TEST(Weights, MdsMeetsSingletonForEveryS) {
  const LinearCode m = code_mds(Field::prime(5), 5, 3);
  for (std::size_t s = 1; s <= 3; ++s) EXPECT_EQ(generalized_hamming_weight(m, s), 2 + s);
  const LinearCode m7 = code_mds(Field::prime(7), 7, 4);
  for (std::size_t s = 1; s <= 4; ++s) EXPECT_EQ(generalized_hamming_weight(m7, s), 3 + s);
}

// Three independent computations of d_s agree on random binary codes.
TEST(Weights, AgreeWithSubspaceAndCoordinateOracles) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng() % 6;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(4, n);
    const LinearCode c = oracle::random_binary_code(n, k, rng);
    const auto hierarchy = weight_hierarchy(c);
    for (std::size_t s = 1; s <= k; ++s) {
      EXPECT_EQ(hierarchy[s - 1], oracle::binary_ghw_by_subspaces(c, s));
      EXPECT_EQ(hierarchy[s - 1], oracle::ghw_by_coordinate_sets(c, s));
    }
    for (std::size_t s = 1; s < k; ++s) EXPECT_LT(hierarchy[s - 1], hierarchy[s]);
  }
}

TEST(Weights, NonbinaryAgreesWithCoordinateOracle) {
  std::mt19937_64 rng(13);
  const Field f = Field::prime(3);
  for (int t = 0; t < 15; ++t) {
    FieldMatrix g(f, 3, 6);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 6; ++c) g.set(r, c, static_cast<uint32_t>(rng() % 3));
    }
    if (mat_rank(g) < 3) continue;
    const LinearCode code = code_from_generator(g);
    for (std::size_t s = 1; s <= 3; ++s) {
      EXPECT_EQ(generalized_hamming_weight(code, s), oracle::ghw_by_coordinate_sets(code, s));
    }
  }
}

TEST(Weights, BudgetIsEnforced) {
  const LinearCode big = code_reed_muller(2, 6);  // k = 22
  EXPECT_THROW(min_distance(big, 1000), TooLargeError);
}

TEST(Automorphisms, FamiliesAndFailures) {
  const LinearCode h = code_cyclic(kGF2, 7, {1, 1, 0, 1});
  const auto rotations = automorphism_family(h, AutomorphismKind::cyclic_shifts);
  ASSERT_EQ(rotations.size(), 7u);
  EXPECT_EQ(rotations[0], Permutation::identity(7));
  EXPECT_THROW(automorphism_family(example_code(), AutomorphismKind::cyclic_shifts),
               UnsupportedError);
  EXPECT_THROW(automorphism_family(h, AutomorphismKind::rm_translations), UnsupportedError);
  // A transposition that is not an automorphism of the example code.
  EXPECT_FALSE(is_automorphism(example_code(), Permutation({2, 1, 3, 5, 4})));
  EXPECT_TRUE(is_automorphism(example_code(), Permutation({2, 1, 3, 4, 5})));
}

TEST(CodeIo, RoundTripAndErrors) {
  const LinearCode c = parse_code(read_text_file(PIRCODEX_SAMPLES_DIR "/nonmds532.code"));
  EXPECT_EQ(c.generator(), example_code().generator());
  EXPECT_EQ(parse_code(format_code(c)).generator(), c.generator());
  const LinearCode g4 = parse_code(read_text_file(PIRCODEX_SAMPLES_DIR "/gf4_mds42.code"));
  EXPECT_EQ(g4.field(), Field::binary_extension(2));
  EXPECT_EQ(parse_code(format_code(g4)).generator(), g4.generator());
  EXPECT_THROW(parse_code("field: gf(2)\n3 2\n1 0 1\n"), ParseError);
  EXPECT_THROW(parse_code("field: gf(2)\n3 1\n1 0 2\n"), ParseError);
  EXPECT_THROW(parse_code("3 1\n1 0 1\n"), ParseError);
  EXPECT_THROW(read_text_file("/nonexistent/code"), ParseError);
}

}  // namespace
}  // namespace pircodex
