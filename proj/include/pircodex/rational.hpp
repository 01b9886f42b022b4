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

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pircodex {

using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(int64_t num, int64_t den = 1) {
  return Rational(num, den);
}

// Always "p/q", including integers ("1/1").
inline std::string to_fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Shortest decimal rendering with up to 12 significant digits.
inline std::string to_decimal(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(12) << to_double(r);
  return os.str();
}

// "p/q (decimal)".
inline std::string describe(const Rational& r) {
  return to_fraction(r) + " (" + to_decimal(r) + ")";
}

// r^e for a nonnegative integer exponent.
inline Rational rational_pow(const Rational& r, uint64_t e) {
  Rational result = 1;
  for (uint64_t t = 0; t < e; ++t) result *= r;
  return result;
}

}  // namespace pircodex
