// Shared generators and independent oracles for the test binaries.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "saffine/affine.hpp"
#include "saffine/polynomial.hpp"
#include "saffine/random.hpp"
#include "saffine/series.hpp"

namespace saffine::testing {

inline Rational rational(long num, long den = 1) {
  Rational q(num);
  q /= den;
  return q;
}

/// num / den with |num| <= span * den, den in [1, max_den].
inline Rational random_rational(SplitMix64& rng, long span = 1, long max_den = 16) {
  const long den = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(max_den)));
  const long range = 2 * span * den + 1;
  const long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(range))) - span * den;
  return rational(num, den);
}

inline QMatrix random_matrix(SplitMix64& rng, std::size_t n, long span = 1, long max_den = 16) {
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = random_rational(rng, span, max_den);
  return m;
}

inline QMatrix random_invertible(SplitMix64& rng, std::size_t n, long span = 2) {
  for (;;) {
    QMatrix m = random_matrix(rng, n, span, 5);
    if (determinant(m) != 0) return m;
  }
}

inline QVector random_vector(SplitMix64& rng, std::size_t n, long span = 1, long max_den = 16) {
  QVector v(n);
  for (auto& x : v) x = random_rational(rng, span, max_den);
  return v;
}

/// Invertible map whose linear part has every |entry| <= 1/(2n), so the
/// row-sum bound is at most 1/2 and the map is contractive.
inline AffineMap random_contraction(SplitMix64& rng, std::size_t n) {
  for (;;) {
    QMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = random_rational(rng, 1, 12) / (2 * static_cast<long>(n));
    if (determinant(m) != 0) return AffineMap(m, random_vector(rng, n, 2));
  }
}

/// Euclidean distance of two float points.
inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Compositional inverse by Lagrange inversion,
/// [t^k] s^{-1} = (1/k) [u^{k-1}] (u / s(u))^k, on plain coefficient vectors.
inline std::vector<Rational> lagrange_reverse(const std::vector<Rational>& s) {
  using Coeffs = std::vector<Rational>;
  const std::size_t n = s.size();
  auto mul = [](const Coeffs& a, const Coeffs& b) {
    Coeffs out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  Coeffs q(n - 1);  // s(u) / u
  for (std::size_t i = 1; i < n; ++i) q[i - 1] = s[i];
  Coeffs inv(n - 1);  // u / s(u)
  inv[0] = 1 / q[0];
  for (std::size_t k = 1; k < inv.size(); ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += q[j] * inv[k - j];
    inv[k] = -acc / q[0];
  }
  Coeffs r(n), pw(n - 1);
  pw[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    pw = mul(pw, inv);
    r[k] = pw[k - 1] / static_cast<long>(k);
  }
  return r;
}

}  // namespace saffine::testing
