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

// Exact arithmetic over GF(p), p < 2^31, and GF(2^e), e <= 16.
//
// Elements are carried as canonical 32-bit representatives: the residue in
// [0, p) for prime fields, and the packed coefficient vector (bit t holds the
// coefficient of z^t) for binary extension fields.

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "pircodex/errors.hpp"

namespace pircodex {

namespace detail {

inline bool is_prime(uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

// Remainder of a(z) divided by b(z) over GF(2), both bit-packed.
inline uint64_t gf2_poly_mod(uint64_t a, uint64_t b) {
  const int db = std::bit_width(b) - 1;
  for (int da = std::bit_width(a) - 1; da >= db; da = std::bit_width(a) - 1) {
    a ^= b << (da - db);
  }
  return a;
}

// Trial division by every polynomial of degree 1..deg/2.
inline bool gf2_poly_is_irreducible(uint64_t poly) {
  const int deg = std::bit_width(poly) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    for (uint64_t f = uint64_t{1} << d; f < (uint64_t{1} << (d + 1)); ++f) {
      if (gf2_poly_mod(poly, f) == 0) return false;
    }
  }
  return true;
}

// Conway polynomials for GF(2^e), e = 1..16, bit-packed with the leading term.
inline constexpr std::array<uint32_t, 17> kDefaultBinaryModulus = {
    0x0,    0x3,    0x7,    0xB,    0x13,   0x25,    0x5B,   0x83,   0x11D,
    0x211,  0x46F,  0x805,  0x10EB, 0x201B, 0x40A9, 0x8035, 0x1002D};

}  // namespace detail

class FieldElement;

// Descriptor of a finite field. Small, trivially copyable and comparable.
class Field {
 public:
  static constexpr unsigned kMaxExtensionDegree = 16;
  static constexpr uint64_t kMaxPrime = (uint64_t{1} << 31);

  static Field prime(uint64_t p) {
    if (p >= kMaxPrime || !detail::is_prime(p)) {
      throw ParameterError("characteristic " + std::to_string(p) +
                           " is not a prime below 2^31");
    }
    return Field(static_cast<uint32_t>(p), 1, 0);
  }

  // GF(2^e) with the given bit-packed modulus, or the default table entry
  // when modulus is 0. GF(2^1) is the prime field GF(2).
  static Field binary_extension(unsigned degree, uint32_t modulus = 0) {
    if (degree < 1 || degree > kMaxExtensionDegree) {
      throw ParameterError("extension degree must be in [1, 16]");
    }
    if (degree == 1) return prime(2);
    if (modulus == 0) modulus = detail::kDefaultBinaryModulus[degree];
    if (static_cast<unsigned>(std::bit_width(modulus)) != degree + 1) {
      throw ParameterError("modulus degree does not match extension degree");
    }
    if (!detail::gf2_poly_is_irreducible(modulus)) {
      throw ParameterError("modulus is reducible over GF(2)");
    }
    return Field(2, degree, modulus);
  }

  // Prime order, or a power of two with the default modulus.
  static Field of_order(uint64_t q) {
    if (q >= 4 && std::has_single_bit(q)) {
      return binary_extension(static_cast<unsigned>(std::countr_zero(q)));
    }
    if (detail::is_prime(q) && q < kMaxPrime) return prime(q);
    throw ParameterError("unsupported field order " + std::to_string(q));
  }

  // Accepts `gf(q)` and `gf(2^e)` / `gf(2^e;modulus=<hex>)`.
  static Field parse(std::string_view text);

  uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  uint32_t modulus() const { return modulus_; }
  uint64_t order() const {
    return e_ == 1 ? uint64_t{p_} : (uint64_t{1} << e_);
  }
  bool is_prime_field() const { return e_ == 1; }

  std::string to_string() const {
    if (e_ == 1) return "gf(" + std::to_string(p_) + ")";
    std::ostringstream os;
    os << "gf(2^" << e_ << ";modulus=0x" << std::hex << std::uppercase
       << modulus_ << ")";
    return os.str();
  }

  bool contains(uint64_t v) const { return v < order(); }

  // Canonical representative of an integer: residue mod p, or the packed
  // polynomial reduced by the modulus.
  uint32_t reduce(uint64_t v) const {
    if (e_ == 1) return static_cast<uint32_t>(v % p_);
    return static_cast<uint32_t>(detail::gf2_poly_mod(v, modulus_));
  }

  FieldElement element(uint64_t v) const;
  FieldElement zero() const;
  FieldElement one() const;

  // Raw operations on canonical representatives.
  uint32_t add(uint32_t a, uint32_t b) const {
    if (e_ > 1 || p_ == 2) return a ^ b;
    const uint64_t s = uint64_t{a} + b;
    return static_cast<uint32_t>(s >= p_ ? s - p_ : s);
  }
  uint32_t neg(uint32_t a) const {
    if (e_ > 1 || p_ == 2 || a == 0) return a;
    return p_ - a;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (e_ == 1) {
      return static_cast<uint32_t>((uint64_t{a} * b) % p_);
    }
    uint32_t acc = 0;
    const uint32_t top = uint32_t{1} << e_;
    while (b != 0) {
      if (b & 1u) acc ^= a;
      b >>= 1;
      a <<= 1;
      if (a & top) a ^= modulus_;
    }
    return acc;
  }
  uint32_t pow(uint32_t a, uint64_t exponent) const {
    uint32_t result = 1;
    while (exponent != 0) {
      if (exponent & 1u) result = mul(result, a);
      a = mul(a, a);
      exponent >>= 1;
    }
    return result;
  }
  uint32_t inv(uint32_t a) const {
    if (a == 0) throw DomainError("inverse of zero");
    return pow(a, order() - 2);
  }
  uint32_t div(uint32_t a, uint32_t b) const {
    if (b == 0) throw DomainError("division by zero");
    return mul(a, inv(b));
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(uint32_t p, unsigned e, uint32_t modulus)
      : p_(p), e_(e), modulus_(modulus) {}

  uint32_t p_;
  unsigned e_;
  uint32_t modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const Field& field) {
  return os << field.to_string();
}

// A value paired with its field; mixing fields throws SpecMismatchError.
class FieldElement {
 public:
  FieldElement(Field field, uint32_t value) : field_(field), value_(value) {
    if (!field_.contains(value)) {
      throw ParameterError("value " + std::to_string(value) +
                           " is not a canonical element of " +
                           field_.to_string());
    }
  }

  const Field& field() const { return field_; }
  uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement inverse() const { return {field_, field_.inv(value_)}; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.div(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.field_ != b.field_) {
      throw SpecMismatchError("operands from " + a.field_.to_string() +
                              " and " + b.field_.to_string());
    }
  }

  Field field_;
  uint32_t value_;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
  return os << x.value();
}

inline FieldElement Field::element(uint64_t v) const { return {*this, reduce(v)}; }
inline FieldElement Field::zero() const { return {*this, 0}; }
inline FieldElement Field::one() const { return {*this, 1}; }

namespace detail {

inline uint64_t parse_unsigned(std::string_view s, int base = 10) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) {
    s.remove_prefix(2);
  }
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("expected an unsigned integer, got '" + std::string(s) +
                     "'");
  }
  return value;
}

}  // namespace detail

inline Field Field::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  const bool prefixed = s.starts_with("gf(") || s.starts_with("GF(");
  if (!prefixed || !s.ends_with(")")) {
    throw ParseError("field spec must look like gf(q), got '" +
                     std::string(text) + "'");
  }
  s = s.substr(3, s.size() - 4);
  std::string_view modulus_part;
  if (auto semi = s.find(';'); semi != std::string_view::npos) {
    modulus_part = s.substr(semi + 1);
    s = s.substr(0, semi);
    while (!modulus_part.empty() && modulus_part.front() == ' ') {
      modulus_part.remove_prefix(1);
    }
    if (!modulus_part.starts_with("modulus=")) {
      throw ParseError("unknown field option in '" + std::string(text) + "'");
    }
    modulus_part.remove_prefix(8);
  }
  try {
    if (auto caret = s.find('^'); caret != std::string_view::npos) {
      const uint64_t base = detail::parse_unsigned(s.substr(0, caret));
      const uint64_t degree = detail::parse_unsigned(s.substr(caret + 1));
      if (base != 2) {
        throw ParseError("only binary extension fields are supported");
      }
      const uint32_t modulus =
          modulus_part.empty()
              ? 0
              : static_cast<uint32_t>(detail::parse_unsigned(modulus_part, 16));
      return binary_extension(static_cast<unsigned>(degree), modulus);
    }
    if (!modulus_part.empty()) {
      throw ParseError("modulus given for a prime field");
    }
    return of_order(detail::parse_unsigned(s));
  } catch (const ParameterError& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) +
                     "'");
  }
}

}  // namespace pircodex
