#include "saffine/linalg.hpp"

#include <utility>

#include "saffine/errors.hpp"

namespace saffine {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Rational> entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return {};
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::column(std::size_t c) const {
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: inner dimensions differ");
  QMatrix out(a.rows(), b.cols());
  Rational tmp;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        tmp = a(i, k) * b(k, j);
        out(i, j) += tmp;
      }
    }
  return out;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector product: dimension mismatch");
  QVector out(a.rows());
  Rational tmp;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0 || x[k] == 0) continue;
      tmp = a(i, k) * x[k];
      out[i] += tmp;
    }
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix difference: shape mismatch");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("vector sum: dimension mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector subtract(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw InputError("vector difference: dimension mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector scaled(const QVector& a, const Rational& s) {
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<std::size_t> row_reduce(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational factor, tmp;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (a(row, c) == 0) continue;
        tmp = factor * a(row, c);
        a(r, c) -= tmp;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(QMatrix a) { return row_reduce(a).size(); }

Rational determinant(const QMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  QMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1, factor, tmp;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a(sel, col) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(sel, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) {
        tmp = factor * a(col, c);
        a(r, c) -= tmp;
      }
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw InputError("solve: right-hand side length mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  QVector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

QVector SpanBuilder::reduce(QVector v) const {
  Rational tmp;
  for (std::size_t i = 0; i < echelon_.size(); ++i) {
    const Rational factor = v[pivots_[i]];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < length_; ++c) {
      if (echelon_[i][c] == 0) continue;
      tmp = factor * echelon_[i][c];
      v[c] -= tmp;
    }
  }
  return v;
}

bool SpanBuilder::add(const QVector& v) {
  if (v.size() != length_) throw InputError("span: vector length mismatch");
  QVector r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < length_ && r[pivot] == 0) ++pivot;
  if (pivot == length_) return false;
  const Rational inv = 1 / r[pivot];
  for (auto& x : r) x *= inv;
  // Keep existing rows reduced against the new pivot so `reduce` stays a
  // single pass.
  Rational tmp;
  for (auto& row : echelon_) {
    const Rational factor = row[pivot];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < length_; ++c) {
      tmp = factor * r[c];
      row[c] -= tmp;
    }
  }
  echelon_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

bool SpanBuilder::contains(const QVector& v) const {
  if (v.size() != length_) throw InputError("span: vector length mismatch");
  return is_zero(reduce(v));
}

std::vector<double> to_doubles(const QVector& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

}  // namespace saffine
