// Dense exact linear algebra over the rationals.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "saffine/rational.hpp"

namespace saffine {

using QVector = std::vector<Rational>;

/// Row-major dense matrix of rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const Rational> entries);
  /// Throws InputError when the rows are ragged.
  static QMatrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;
  QMatrix transposed() const;
  bool is_diagonal() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& x);
QMatrix operator-(const QMatrix& a, const QMatrix& b);

QVector add(const QVector& a, const QVector& b);
QVector subtract(const QVector& a, const QVector& b);
QVector scaled(const QVector& a, const Rational& s);
bool is_zero(const QVector& v);

Rational determinant(const QMatrix& a);

/// Exact inverse, or nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& a);

/// Reduced row echelon form of `a`; returns the pivot column of each
/// nonzero row in order.
std::vector<std::size_t> row_reduce(QMatrix& a);

std::size_t rank(QMatrix a);

/// Some solution x of a·x = b (free variables set to zero), or nullopt when
/// the system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Incrementally maintained span of vectors of a fixed length. `add` reports
/// whether the vector enlarged the span.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t length) : length_(length) {}

  bool add(const QVector& v);
  std::size_t rank() const { return echelon_.size(); }
  bool contains(const QVector& v) const;

 private:
  QVector reduce(QVector v) const;

  std::size_t length_;
  std::vector<QVector> echelon_;        // normalized so pivot entry == 1
  std::vector<std::size_t> pivots_;
};

std::vector<double> to_doubles(const QVector& v);

}  // namespace saffine
