#include "saffine/series.hpp"

#include <algorithm>

#include "saffine/errors.hpp"

namespace saffine {

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InputError("series needs at least one coefficient");
}

Series Series::identity(unsigned order) { return monomial(order, 1); }

Series Series::monomial(unsigned order, unsigned degree, const Rational& coeff) {
  Series s(order);
  if (degree <= order) s[degree] = coeff;
  return s;
}

bool Series::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

int Series::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return static_cast<int>(k);
  return -1;
}

Series Series::scale_argument(const Rational& lambda) const {
  Series out(order());
  Rational p = 1;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out[k] = coeffs_[k] * p;
    p *= lambda;
  }
  return out;
}

Series Series::truncated(unsigned new_order) const {
  if (new_order > order()) throw InputError("cannot raise the truncation order of a series");
  return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
}

namespace {

void require_same_order(const Series& a, const Series& b) {
  if (a.order() != b.order()) throw InputError("series orders differ");
}

}  // namespace

Series operator+(const Series& a, const Series& b) {
  require_same_order(a, b);
  Series out(a.order());
  for (unsigned k = 0; k <= a.order(); ++k) out[k] = a[k] + b[k];
  return out;
}

Series operator-(const Series& a, const Series& b) {
  require_same_order(a, b);
  Series out(a.order());
  for (unsigned k = 0; k <= a.order(); ++k) out[k] = a[k] - b[k];
  return out;
}

Series operator*(const Series& a, const Rational& s) {
  Series out(a.order());
  for (unsigned k = 0; k <= a.order(); ++k) out[k] = a[k] * s;
  return out;
}

Series series_multiply(const Series& a, const Series& b) {
  require_same_order(a, b);
  const unsigned n = a.order();
  Series out(n);
  Rational tmp;
  for (unsigned i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; i + j <= n; ++j) {
      if (b[j] == 0) continue;
      tmp = a[i] * b[j];
      out[i + j] += tmp;
    }
  }
  return out;
}

Series series_compose(const Series& outer, const Series& inner) {
  require_same_order(outer, inner);
  if (inner[0] != 0) throw InputError("series_compose: inner series has a nonzero constant term");
  const unsigned n = outer.order();
  Series out(n);
  out[0] = outer[n];
  for (unsigned k = n; k-- > 0;) {
    out = series_multiply(out, inner);
    out[0] += outer[k];
  }
  return out;
}

Series series_reverse(const Series& s) {
  if (s[0] != 0) throw InputError("series_reverse: s(0) must be 0");
  if (s.order() < 1 || s[1] == 0) throw InputError("series_reverse: s'(0) must be nonzero");
  const unsigned n = s.order();
  Series r(n);
  r[1] = 1 / s[1];
  // With r known below degree k, [t^k] s(r) = s1 r_k + (terms in r_1..r_{k-1}),
  // so r_k cancels the latter.
  for (unsigned k = 2; k <= n; ++k) {
    const Series partial = series_compose(s, r);
    r[k] = -partial[k] / s[1];
  }
  return r;
}

QVector VectorSeries::coefficient(std::size_t k) const {
  QVector v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = coords[i][k];
  return v;
}

void VectorSeries::validate() const {
  if (coords.empty()) throw InputError("germ has no coordinates");
  for (const auto& c : coords)
    if (c.order() != coords.front().order()) throw InputError("germ coordinates have different orders");
}

VectorSeries taylor_shift(const std::vector<std::vector<Rational>>& poly_coords, const Rational& t0, unsigned order) {
  VectorSeries out;
  out.t0 = t0;
  for (const auto& poly : poly_coords) {
    // p(t0 + u) = sum_m a_m sum_j C(m, j) t0^(m - j) u^j
    Series s(order);
    for (std::size_t m = 0; m < poly.size(); ++m) {
      if (poly[m] == 0) continue;
      for (std::size_t j = 0; j <= m && j <= order; ++j)
        s[j] += poly[m] * binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)) *
                power(t0, static_cast<unsigned>(m - j));
    }
    out.coords.push_back(std::move(s));
  }
  return out;
}

VectorSeries apply_affine(const QMatrix& q, const QVector& b, const VectorSeries& germ) {
  germ.validate();
  if (q.cols() != germ.dim() || q.rows() != b.size()) throw InputError("apply_affine: dimension mismatch");
  VectorSeries out;
  out.t0 = germ.t0;
  const unsigned n = germ.order();
  for (std::size_t i = 0; i < q.rows(); ++i) {
    Series s(n);
    s[0] = b[i];
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (q(i, j) != 0) s = s + germ.coords[j] * q(i, j);
    out.coords.push_back(std::move(s));
  }
  return out;
}

}  // namespace saffine
