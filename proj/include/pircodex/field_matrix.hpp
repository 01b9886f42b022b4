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

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pircodex/errors.hpp"
#include "pircodex/finite_field.hpp"

namespace pircodex {

// Row vector of canonical representatives over some Field.
using Symbols = std::vector<uint32_t>;

// Dense row-major matrix over a finite field. Indices are 0-based.
class FieldMatrix {
 public:
  FieldMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FieldMatrix identity(Field field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  // Entries must already be canonical elements of `field`.
  static FieldMatrix from_rows(Field field,
                               const std::vector<std::vector<uint64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FieldMatrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw ParameterError("ragged matrix rows");
      }
      for (std::size_t j = 0; j < cols; ++j) {
        if (!field.contains(rows[i][j])) {
          throw ParameterError("entry " + std::to_string(rows[i][j]) +
                               " is not an element of " + field.to_string());
        }
        m.set(i, j, static_cast<uint32_t>(rows[i][j]));
      }
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  uint32_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, uint32_t v) {
    data_[r * cols_ + c] = v;
  }
  FieldElement at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw ParameterError("index out of range");
    return {field_, (*this)(r, c)};
  }

  std::span<const uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<uint32_t> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  FieldMatrix select_columns(std::span<const std::size_t> cols) const {
    FieldMatrix out(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t t = 0; t < cols.size(); ++t) {
        out.set(i, t, (*this)(i, cols[t]));
      }
    }
    return out;
  }

  FieldMatrix transpose() const {
    FieldMatrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
    }
    return out;
  }

  // Stacks `other` below this matrix.
  FieldMatrix stack(const FieldMatrix& other) const {
    if (other.field_ != field_) throw SpecMismatchError("stack across fields");
    if (other.cols_ != cols_) throw ParameterError("stack width mismatch");
    FieldMatrix out(field_, rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(),
              out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
  }

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.field_ != b.field_) throw SpecMismatchError("product across fields");
    if (a.cols_ != b.rows_) throw ParameterError("product shape mismatch");
    const Field& f = a.field_;
    FieldMatrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t t = 0; t < a.cols_; ++t) {
        const uint32_t s = a(i, t);
        if (s == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out.set(i, j, f.add(out(i, j), f.mul(s, b(t, j))));
        }
      }
    }
    return out;
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<uint32_t> data_;
};

// x * M for a row vector x of length M.rows().
inline Symbols row_times(const FieldMatrix& m, std::span<const uint32_t> x) {
  if (x.size() != m.rows()) throw ParameterError("vector length mismatch");
  const Field& f = m.field();
  Symbols out(m.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[j] = f.add(out[j], f.mul(x[i], m(i, j)));
    }
  }
  return out;
}

struct EchelonForm {
  FieldMatrix reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan elimination to reduced row echelon form.
inline EchelonForm reduced_row_echelon(FieldMatrix m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const uint32_t t = m(p, j);
        m.set(p, j, m(r, j));
        m.set(r, j, t);
      }
    }
    const uint32_t scale = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m.set(r, j, f.mul(m(r, j), scale));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const uint32_t factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m.set(i, j, f.sub(m(i, j), f.mul(factor, m(r, j))));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t mat_rank(const FieldMatrix& m) {
  return reduced_row_echelon(m).rank();
}

inline FieldMatrix mat_inverse(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  FieldMatrix augmented(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented.set(i, j, m(i, j));
    augmented.set(i, n + i, 1);
  }
  EchelonForm ef = reduced_row_echelon(std::move(augmented));
  if (ef.rank() < n || ef.pivots[n - 1] != n - 1) {
    throw SingularMatrixError("matrix is singular");
  }
  FieldMatrix inverse(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inverse.set(i, j, ef.reduced(i, n + j));
  }
  return inverse;
}

// Incremental row-space basis, used for independence tests one vector at a
// time. Each stored row is normalized with a leading 1 at its pivot.
class RowBasis {
 public:
  RowBasis(Field field, std::size_t width) : field_(field), width_(width) {}

  std::size_t size() const { return rows_.size(); }

  // Reduces v against the basis; the residue is zero iff v is in the span.
  Symbols residue(std::span<const uint32_t> v) const {
    Symbols r(v.begin(), v.end());
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const uint32_t c = r[pivots_[t]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        r[j] = field_.sub(r[j], field_.mul(c, rows_[t][j]));
      }
    }
    return r;
  }

  bool contains(std::span<const uint32_t> v) const {
    const Symbols r = residue(v);
    for (uint32_t x : r) {
      if (x != 0) return false;
    }
    return true;
  }

  // Adds v if independent; returns whether it was added.
  bool insert(std::span<const uint32_t> v) {
    Symbols r = residue(v);
    std::size_t p = 0;
    while (p < width_ && r[p] == 0) ++p;
    if (p == width_) return false;
    const uint32_t scale = field_.inv(r[p]);
    for (auto& x : r) x = field_.mul(x, scale);
    // Keep existing rows free of the new pivot column.
    for (auto& row : rows_) {
      const uint32_t c = row[p];
      if (c == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        row[j] = field_.sub(row[j], field_.mul(c, r[j]));
      }
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  Field field_;
  std::size_t width_;
  std::vector<Symbols> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace pircodex
