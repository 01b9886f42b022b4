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

// Text format for generator matrices:
//
//   # comment lines and blank lines are ignored
//   field: gf(2)
//   5 3            (n k)
//   1 0 0 1 0      (k rows of n entries)
//
// Entries are decimal for prime fields and hexadecimal (optional 0x) for
// binary extension fields.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pircodex/errors.hpp"
#include "pircodex/finite_field.hpp"
#include "pircodex/linear_code.hpp"

namespace pircodex {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace detail {

// Non-comment, non-blank lines with comments stripped.
inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace detail

inline LinearCode parse_code(const std::string& text) {
  const auto lines = detail::content_lines(text);
  if (lines.size() < 2) throw ParseError("code file needs a field line and a size line");
  const std::string& first = lines[0];
  const auto colon = first.find(':');
  if (colon == std::string::npos || first.substr(0, colon).find("field") == std::string::npos) {
    throw ParseError("first line must be 'field: <spec>'");
  }
  const Field field = Field::parse(first.substr(colon + 1));
  const auto size = detail::split_words(lines[1]);
  if (size.size() != 2) throw ParseError("second line must be 'n k'");
  const std::size_t n = detail::parse_unsigned(size[0]);
  const std::size_t k = detail::parse_unsigned(size[1]);
  if (lines.size() != 2 + k) {
    throw ParseError("expected " + std::to_string(k) + " generator rows, found " +
                     std::to_string(lines.size() - 2));
  }
  const int base = field.is_prime_field() ? 10 : 16;
  std::vector<std::vector<uint64_t>> rows;
  for (std::size_t r = 0; r < k; ++r) {
    const auto words = detail::split_words(lines[2 + r]);
    if (words.size() != n) {
      throw ParseError("generator row " + std::to_string(r + 1) + " has " +
                       std::to_string(words.size()) + " entries, expected " + std::to_string(n));
    }
    std::vector<uint64_t> row;
    for (const auto& w : words) row.push_back(detail::parse_unsigned(w, base));
    rows.push_back(std::move(row));
  }
  try {
    return code_from_generator(FieldMatrix::from_rows(field, rows));
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

inline std::string format_code(const LinearCode& code) {
  std::ostringstream os;
  const Field& f = code.field();
  os << "field: " << f.to_string() << "\n" << code.n() << " " << code.k() << "\n";
  for (std::size_t r = 0; r < code.k(); ++r) {
    for (std::size_t c = 0; c < code.n(); ++c) {
      if (c) os << ' ';
      if (f.is_prime_field()) {
        os << code.generator()(r, c);
      } else {
        os << std::hex << code.generator()(r, c) << std::dec;
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace pircodex
