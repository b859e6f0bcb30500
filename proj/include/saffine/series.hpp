// Truncated power series with exact rational coefficients.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "saffine/linalg.hpp"

namespace saffine {

/// Coefficients of t^0..t^order.
class Series {
 public:
  explicit Series(unsigned order) : coeffs_(order + 1) {}
  /// Takes coefficients as given; order = coeffs.size() - 1.
  explicit Series(std::vector<Rational> coeffs);

  static Series identity(unsigned order);  // t
  static Series monomial(unsigned order, unsigned degree, const Rational& coeff = 1);

  unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  Rational& operator[](std::size_t k) { return coeffs_[k]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  /// Lowest degree with nonzero coefficient; -1 for the zero series.
  int valuation() const;

  /// s(lambda t).
  Series scale_argument(const Rational& lambda) const;
  Series truncated(unsigned order) const;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::vector<Rational> coeffs_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Rational& s);

/// Cauchy product truncated at the common order. Throws on order mismatch.
Series series_multiply(const Series& a, const Series& b);

/// outer(inner(t)) by Horner's rule. Throws InputError when inner(0) != 0 or
/// the orders differ.
Series series_compose(const Series& outer, const Series& inner);

/// Compositional inverse r with s(r(t)) = t to the working order. Throws
/// InputError unless s(0) = 0 and s'(0) != 0.
Series series_reverse(const Series& s);

/// Vector-valued germ: coords[k] is the k-th coordinate as a series in
/// (t - t0).
struct VectorSeries {
  Rational t0 = 0;
  std::vector<Series> coords;

  std::size_t dim() const { return coords.size(); }
  unsigned order() const { return coords.empty() ? 0 : coords.front().order(); }
  /// Coefficient vector of (t - t0)^k.
  QVector coefficient(std::size_t k) const;
  /// Throws InputError for an empty germ or mixed orders.
  void validate() const;
};

/// Germ at t0 of the polynomial curve t -> (sum_m coeffs[k][m] t^m)_k,
/// re-expanded in powers of (t - t0) and truncated at `order`.
VectorSeries taylor_shift(const std::vector<std::vector<Rational>>& poly_coords, const Rational& t0, unsigned order);

/// Q * germ + b: the image of the germ under an affine map.
VectorSeries apply_affine(const QMatrix& q, const QVector& b, const VectorSeries& germ);

}  // namespace saffine
