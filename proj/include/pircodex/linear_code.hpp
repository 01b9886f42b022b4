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

// [n,k] linear codes held as a k x n generator matrix.
//
// Coordinates are 1-based in every public interface (CoordinateSet,
// Permutation); matrix storage underneath stays 0-based.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pircodex/errors.hpp"
#include "pircodex/field_matrix.hpp"
#include "pircodex/finite_field.hpp"

namespace pircodex {

// Sorted, duplicate-free set of 1-based coordinates.
class CoordinateSet {
 public:
  CoordinateSet() = default;
  CoordinateSet(std::initializer_list<std::size_t> members)
      : CoordinateSet(std::vector<std::size_t>(members)) {}
  explicit CoordinateSet(std::vector<std::size_t> members)
      : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw ParameterError("duplicate coordinate in set");
    }
    if (!members_.empty() && members_.front() == 0) {
      throw ParameterError("coordinates are 1-based");
    }
  }

  // Bit j-1 of the mask stands for coordinate j.
  static CoordinateSet from_mask(uint64_t mask) {
    std::vector<std::size_t> m;
    for (std::size_t j = 0; mask != 0; ++j, mask >>= 1) {
      if (mask & 1u) m.push_back(j + 1);
    }
    return CoordinateSet(std::move(m));
  }

  uint64_t mask() const {
    uint64_t m = 0;
    for (std::size_t j : members_) {
      if (j > 64) throw UnsupportedError("coordinate mask limited to n <= 64");
      m |= uint64_t{1} << (j - 1);
    }
    return m;
  }

  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(std::size_t j) const {
    return std::binary_search(members_.begin(), members_.end(), j);
  }
  bool within(std::size_t n) const {
    return members_.empty() || members_.back() <= n;
  }
  bool is_subset_of(const CoordinateSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }

  std::vector<std::size_t> zero_based() const {
    std::vector<std::size_t> z;
    z.reserve(members_.size());
    for (std::size_t j : members_) z.push_back(j - 1);
    return z;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t t = 0; t < members_.size(); ++t) {
      if (t) s += ",";
      s += std::to_string(members_[t]);
    }
    return s + "}";
  }

  friend bool operator==(const CoordinateSet&, const CoordinateSet&) = default;
  friend auto operator<=>(const CoordinateSet&, const CoordinateSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

// A bijection on {1,...,n}.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images)
      : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (std::size_t v : images_) {
      if (v == 0 || v > images_.size() || seen[v]) {
        throw ParameterError("images do not form a permutation");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> im(n);
    for (std::size_t j = 0; j < n; ++j) im[j] = j + 1;
    return Permutation(std::move(im));
  }

  // j -> j + shift (mod n).
  static Permutation rotation(std::size_t n, std::size_t shift) {
    std::vector<std::size_t> im(n);
    for (std::size_t j = 0; j < n; ++j) im[j] = (j + shift) % n + 1;
    return Permutation(std::move(im));
  }

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t j) const { return images_.at(j - 1); }
  const std::vector<std::size_t>& images() const { return images_; }

  CoordinateSet apply(const CoordinateSet& set) const {
    std::vector<std::size_t> out;
    out.reserve(set.size());
    for (std::size_t j : set) out.push_back((*this)(j));
    return CoordinateSet(std::move(out));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

enum class CodeFamily { generic, cyclic, reed_muller, mds, repetition };

inline const char* to_string(CodeFamily family) {
  switch (family) {
    case CodeFamily::generic: return "generic";
    case CodeFamily::cyclic: return "cyclic";
    case CodeFamily::reed_muller: return "reed_muller";
    case CodeFamily::mds: return "mds";
    case CodeFamily::repetition: return "repetition";
  }
  return "generic";
}

class LinearCode {
 public:
  const Field& field() const { return g_.field(); }
  std::size_t n() const { return g_.cols(); }
  std::size_t k() const { return g_.rows(); }
  const FieldMatrix& generator() const { return g_; }
  CodeFamily family() const { return family_; }

  std::string describe() const {
    return "[" + std::to_string(n()) + "," + std::to_string(k()) + "] " +
           to_string(family_) + " code over " + field().to_string();
  }

 private:
  LinearCode(FieldMatrix g, CodeFamily family)
      : g_(std::move(g)), family_(family) {}

  friend LinearCode make_code(FieldMatrix g, CodeFamily family);

  FieldMatrix g_;
  CodeFamily family_;
};

// Wraps g verbatim after checking 1 <= k <= n and full row rank.
inline LinearCode make_code(FieldMatrix g, CodeFamily family) {
  if (g.rows() < 1 || g.rows() > g.cols()) {
    throw InvalidCodeError("generator must be k x n with 1 <= k <= n");
  }
  if (mat_rank(g) != g.rows()) {
    throw InvalidCodeError("generator matrix is rank deficient");
  }
  return LinearCode(std::move(g), family);
}

inline LinearCode code_from_generator(FieldMatrix g) {
  return make_code(std::move(g), CodeFamily::generic);
}

namespace detail {

inline void poly_trim(Symbols& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a / b over the field; coefficients in ascending degree.
inline Symbols poly_mod(const Field& f, Symbols a, Symbols b) {
  poly_trim(a);
  poly_trim(b);
  if (b.empty()) throw DomainError("polynomial division by zero");
  const uint32_t lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const uint32_t factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t t = 0; t < b.size(); ++t) {
      a[shift + t] = f.sub(a[shift + t], f.mul(factor, b[t]));
    }
    poly_trim(a);
  }
  return a;
}

inline uint64_t checked_pow(uint64_t base, uint64_t exponent,
                            uint64_t limit = std::numeric_limits<uint64_t>::max()) {
  uint64_t r = 1;
  for (uint64_t t = 0; t < exponent; ++t) {
    if (base != 0 && r > limit / base) {
      throw TooLargeError("power exceeds limit");
    }
    r *= base;
  }
  return r;
}

}  // namespace detail

// Cyclic code of length n generated by g(x) = g_0 + g_1 x + ... (coefficients
// in ascending degree). Generator rows are the k = n - deg g shifts of g.
inline LinearCode code_cyclic(Field field, std::size_t n,
                              const std::vector<uint64_t>& generator_poly) {
  Symbols g;
  for (uint64_t c : generator_poly) {
    if (!field.contains(c)) {
      throw ParameterError("polynomial coefficient outside " + field.to_string());
    }
    g.push_back(static_cast<uint32_t>(c));
  }
  detail::poly_trim(g);
  if (g.empty() || g.size() - 1 >= n) {
    throw InvalidPolynomialError("generator polynomial must have degree < n");
  }
  Symbols xn_minus_1(n + 1, 0);
  xn_minus_1[0] = field.neg(1);
  xn_minus_1[n] = 1;
  if (!detail::poly_mod(field, xn_minus_1, g).empty()) {
    throw InvalidPolynomialError("generator polynomial does not divide x^" +
                                 std::to_string(n) + " - 1");
  }
  const std::size_t k = n - (g.size() - 1);
  FieldMatrix gm(field, k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < g.size(); ++t) gm.set(i, i + t, g[t]);
  }
  return make_code(std::move(gm), CodeFamily::cyclic);
}

// Binary RM(r, e). Coordinates are the points of GF(2)^e in lexicographic
// order (coordinate j <-> point j-1, first variable is the most significant
// bit); rows are degree <= r monomials, by degree then lexicographically.
inline LinearCode code_reed_muller(unsigned r, unsigned e) {
  if (r > e) throw ParameterError("Reed-Muller order must not exceed e");
  if (e > 12) throw TooLargeError("Reed-Muller length limited to 2^12");
  const std::size_t n = std::size_t{1} << e;
  std::vector<std::vector<uint64_t>> rows;
  for (unsigned degree = 0; degree <= r; ++degree) {
    // Lexicographic combinations of `degree` variables out of e.
    std::vector<unsigned> vars(degree);
    for (unsigned t = 0; t < degree; ++t) vars[t] = t;
    while (true) {
      std::vector<uint64_t> row(n, 0);
      for (std::size_t p = 0; p < n; ++p) {
        uint64_t v = 1;
        for (unsigned var : vars) v &= (p >> (e - 1 - var)) & 1u;
        row[p] = v;
      }
      rows.push_back(std::move(row));
      int t = static_cast<int>(degree) - 1;
      while (t >= 0 && vars[t] == e - degree + static_cast<unsigned>(t)) --t;
      if (t < 0) break;
      ++vars[t];
      for (unsigned u = static_cast<unsigned>(t) + 1; u < degree; ++u) {
        vars[u] = vars[u - 1] + 1;
      }
    }
  }
  return make_code(FieldMatrix::from_rows(Field::prime(2), rows),
                   CodeFamily::reed_muller);
}

// Generalized Reed-Solomon code on evaluation points 0, 1, ..., n-1 (as
// field representatives) with all-ones column multipliers. For n = k the
// identity generator is returned.
inline LinearCode code_mds(Field field, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw ParameterError("MDS code needs 1 <= k <= n");
  if (n == k) return make_code(FieldMatrix::identity(field, n), CodeFamily::mds);
  if (field.order() < n) {
    throw FieldTooSmallError("GRS construction needs q >= n, got q = " +
                             std::to_string(field.order()));
  }
  FieldMatrix g(field, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    const uint32_t alpha = static_cast<uint32_t>(j);
    uint32_t power = 1;
    for (std::size_t i = 0; i < k; ++i) {
      g.set(i, j, power);
      power = field.mul(power, alpha);
    }
  }
  return make_code(std::move(g), CodeFamily::mds);
}

inline LinearCode code_repetition(Field field, std::size_t n) {
  if (n < 1) throw ParameterError("repetition code needs n >= 1");
  FieldMatrix g(field, 1, n);
  for (std::size_t j = 0; j < n; ++j) g.set(0, j, 1);
  return make_code(std::move(g), CodeFamily::repetition);
}

inline Symbols encode(const LinearCode& code, std::span<const uint32_t> message) {
  if (message.size() != code.k()) throw ParameterError("message length != k");
  return row_times(code.generator(), message);
}

// Row-space membership test with a cached basis of the generator.
class CodewordChecker {
 public:
  explicit CodewordChecker(const LinearCode& code)
      : basis_(code.field(), code.n()) {
    for (std::size_t i = 0; i < code.k(); ++i) {
      basis_.insert(code.generator().row(i));
    }
  }
  bool contains(std::span<const uint32_t> word) const {
    return basis_.contains(word);
  }

 private:
  RowBasis basis_;
};

inline std::size_t rank_of_columns(const LinearCode& code,
                                   const CoordinateSet& coords) {
  if (!coords.within(code.n())) {
    throw ParameterError("coordinate set " + coords.to_string() +
                         " exceeds n = " + std::to_string(code.n()));
  }
  if (coords.empty()) return 0;
  const auto cols = coords.zero_based();
  return mat_rank(code.generator().select_columns(cols));
}

// G restricted to I is invertible. The answer depends only on the code, not
// on the chosen generator.
inline bool is_information_set(const LinearCode& code, const CoordinateSet& set) {
  if (set.size() != code.k()) {
    throw ParameterError("information set candidate must have size k = " +
                         std::to_string(code.k()));
  }
  return rank_of_columns(code, set) == code.k();
}

// Lexicographically first information set inside `within`, if any. Greedy
// selection is exact because column sets form a matroid.
inline std::optional<CoordinateSet> information_set_within(
    const LinearCode& code, const CoordinateSet& within) {
  if (!within.within(code.n())) throw ParameterError("coordinate out of range");
  RowBasis basis(code.field(), code.k());
  std::vector<std::size_t> picked;
  const FieldMatrix& g = code.generator();
  Symbols column(code.k());
  for (std::size_t j : within) {
    for (std::size_t i = 0; i < code.k(); ++i) column[i] = g(i, j - 1);
    if (basis.insert(column)) {
      picked.push_back(j);
      if (picked.size() == code.k()) return CoordinateSet(std::move(picked));
    }
  }
  return std::nullopt;
}

inline bool contains_information_set(const LinearCode& code,
                                     const CoordinateSet& within) {
  return rank_of_columns(code, within) == code.k();
}

// All information sets in lexicographic order.
inline std::vector<CoordinateSet> information_sets(const LinearCode& code) {
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  std::vector<CoordinateSet> out;
  std::vector<std::size_t> pick(k);
  for (std::size_t t = 0; t < k; ++t) pick[t] = t + 1;
  while (true) {
    CoordinateSet candidate{std::vector<std::size_t>(pick)};
    if (rank_of_columns(code, candidate) == k) out.push_back(candidate);
    std::ptrdiff_t t = static_cast<std::ptrdiff_t>(k) - 1;
    while (t >= 0 && pick[t] == n - k + static_cast<std::size_t>(t) + 1) --t;
    if (t < 0) break;
    ++pick[t];
    for (std::size_t u = static_cast<std::size_t>(t) + 1; u < k; ++u) {
      pick[u] = pick[u - 1] + 1;
    }
  }
  return out;
}

// Recovers a codeword (and its message) from its values on an information
// set: message = c|_I * (G|_I)^{-1}.
class InformationSetDecoder {
 public:
  InformationSetDecoder(const LinearCode& code, CoordinateSet set)
      : generator_(code.generator()),
        set_(std::move(set)),
        inverse_(mat_inverse(code.generator().select_columns(set_.zero_based()))) {
  }

  const CoordinateSet& coordinates() const { return set_; }

  Symbols message(std::span<const uint32_t> values_on_set) const {
    return row_times(inverse_, values_on_set);
  }
  Symbols codeword(std::span<const uint32_t> values_on_set) const {
    return row_times(generator_, message(values_on_set));
  }

 private:
  FieldMatrix generator_;
  CoordinateSet set_;
  FieldMatrix inverse_;
};

inline constexpr uint64_t kDefaultEnumerationBudget = uint64_t{1} << 24;

// Calls fn(message, codeword) for all q^k codewords.
inline void for_each_codeword(
    const LinearCode& code, uint64_t budget,
    const std::function<void(const Symbols&, const Symbols&)>& fn) {
  const Field& f = code.field();
  const uint64_t q = f.order();
  const std::size_t k = code.k();
  const std::size_t n = code.n();
  detail::checked_pow(q, k, budget);
  const FieldMatrix& g = code.generator();
  Symbols msg(k, 0);
  Symbols word(n, 0);
  while (true) {
    fn(msg, word);
    std::size_t t = 0;
    for (; t < k; ++t) {
      const uint32_t old = msg[t];
      const uint32_t next = (old + 1 == q) ? 0 : old + 1;
      msg[t] = next;
      const uint32_t delta = f.sub(next, old);
      for (std::size_t j = 0; j < n; ++j) {
        word[j] = f.add(word[j], f.mul(delta, g(t, j)));
      }
      if (next != 0) break;
    }
    if (t == k) break;
  }
}

inline std::size_t hamming_weight(std::span<const uint32_t> word) {
  return static_cast<std::size_t>(
      std::count_if(word.begin(), word.end(), [](uint32_t x) { return x != 0; }));
}

inline std::size_t min_distance(const LinearCode& code,
                                uint64_t budget = kDefaultEnumerationBudget) {
  std::size_t best = code.n();
  for_each_codeword(code, budget, [&](const Symbols&, const Symbols& word) {
    const std::size_t w = hamming_weight(word);
    if (w != 0 && w < best) best = w;
  });
  return best;
}

namespace detail {

struct ProjectiveWord {
  Symbols message;
  uint64_t support = 0;
};

// One representative per 1-dimensional subcode (first nonzero message digit
// equal to 1), sorted by support weight.
inline std::vector<ProjectiveWord> projective_codewords(const LinearCode& code,
                                                        uint64_t budget) {
  if (code.n() > 64) throw UnsupportedError("support masks limited to n <= 64");
  std::vector<ProjectiveWord> out;
  for_each_codeword(code, budget, [&](const Symbols& msg, const Symbols& word) {
    auto lead = std::find_if(msg.begin(), msg.end(),
                             [](uint32_t x) { return x != 0; });
    if (lead == msg.end() || *lead != 1) return;
    uint64_t mask = 0;
    for (std::size_t j = 0; j < word.size(); ++j) {
      if (word[j] != 0) mask |= uint64_t{1} << j;
    }
    out.push_back({msg, mask});
  });
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::popcount(a.support) < std::popcount(b.support);
  });
  return out;
}

}  // namespace detail

// d_s: the smallest support of an s-dimensional subcode. Enumerates s-tuples
// of independent projective codewords with branch-and-bound on the size of
// the union of supports (the support of a subcode is the union of the
// supports of any basis). `budget` caps both q^k and the search nodes.
inline std::size_t generalized_hamming_weight(
    const LinearCode& code, std::size_t s,
    uint64_t budget = kDefaultEnumerationBudget) {
  if (s < 1 || s > code.k()) {
    throw ParameterError("GHW index s must lie in [1, k]");
  }
  const auto words = detail::projective_codewords(code, budget);
  const Field& f = code.field();
  uint64_t code_support = 0;
  for (const auto& w : words) code_support |= w.support;
  if (s == code.k()) return static_cast<std::size_t>(std::popcount(code_support));

  int best = std::popcount(code_support) + 1;
  uint64_t nodes = 0;
  std::function<void(std::size_t, std::size_t, uint64_t, const RowBasis&)> dfs =
      [&](std::size_t depth, std::size_t start, uint64_t support,
          const RowBasis& basis) {
        if (++nodes > budget) {
          throw TooLargeError("generalized Hamming weight search over budget");
        }
        if (depth == s) {
          best = std::min(best, std::popcount(support));
          return;
        }
        for (std::size_t t = start; t < words.size(); ++t) {
          const uint64_t merged = support | words[t].support;
          if (std::popcount(merged) >= best) continue;
          RowBasis next = basis;
          if (!next.insert(words[t].message)) continue;
          dfs(depth + 1, t + 1, merged, next);
        }
      };
  dfs(0, 0, 0, RowBasis(f, code.k()));
  return static_cast<std::size_t>(best);
}

// (d_1, ..., d_k).
inline std::vector<std::size_t> weight_hierarchy(
    const LinearCode& code, uint64_t budget = kDefaultEnumerationBudget) {
  std::vector<std::size_t> d;
  for (std::size_t s = 1; s <= code.k(); ++s) {
    d.push_back(generalized_hamming_weight(code, s, budget));
  }
  return d;
}

// Moves coordinate j to position perm(j): column perm(j) of the result is
// column j of G.
inline LinearCode apply_permutation(const LinearCode& code, const Permutation& perm) {
  if (perm.size() != code.n()) {
    throw ParameterError("permutation length does not match n");
  }
  const FieldMatrix& g = code.generator();
  FieldMatrix out(code.field(), code.k(), code.n());
  for (std::size_t i = 0; i < code.k(); ++i) {
    for (std::size_t j = 1; j <= code.n(); ++j) {
      out.set(i, perm(j) - 1, g(i, j - 1));
    }
  }
  return make_code(std::move(out), CodeFamily::generic);
}

inline bool is_automorphism(const LinearCode& code, const Permutation& perm) {
  const LinearCode moved = apply_permutation(code, perm);
  CodewordChecker checker(code);
  for (std::size_t i = 0; i < moved.k(); ++i) {
    if (!checker.contains(moved.generator().row(i))) return false;
  }
  return true;
}

enum class AutomorphismKind { cyclic_shifts, rm_translations };

inline const char* to_string(AutomorphismKind kind) {
  return kind == AutomorphismKind::cyclic_shifts ? "cyclic_shifts"
                                                 : "rm_translations";
}

// n automorphisms with {pi_1(j), ..., pi_n(j)} = {1, ..., n} for every j:
// the n rotations of a shift-invariant code, or the 2^e translations
// x -> x + v of a code on the lexicographically labelled points of GF(2)^e.
inline std::vector<Permutation> automorphism_family(const LinearCode& code,
                                                    AutomorphismKind kind) {
  const std::size_t n = code.n();
  std::vector<Permutation> family;
  if (kind == AutomorphismKind::cyclic_shifts) {
    if (!is_automorphism(code, Permutation::rotation(n, 1))) {
      throw UnsupportedError("code is not invariant under cyclic shifts");
    }
    for (std::size_t s = 0; s < n; ++s) family.push_back(Permutation::rotation(n, s));
    return family;
  }
  if (!std::has_single_bit(n)) {
    throw UnsupportedError("translations need a power-of-two length");
  }
  auto translation = [n](std::size_t v) {
    std::vector<std::size_t> im(n);
    for (std::size_t j = 0; j < n; ++j) im[j] = (j ^ v) + 1;
    return Permutation(std::move(im));
  };
  // Unit translations generate the group.
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    if (!is_automorphism(code, translation(bit))) {
      throw UnsupportedError("code is not invariant under GF(2)^e translations");
    }
  }
  for (std::size_t v = 0; v < n; ++v) family.push_back(translation(v));
  return family;
}

}  // namespace pircodex
