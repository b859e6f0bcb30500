// Sparse multivariate polynomials with exact rational coefficients, their
// composition with affine maps, and scaling-factor certificates P o f = C P.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saffine/affine.hpp"

namespace saffine {

using Exponent = std::vector<unsigned>;

/// Polynomial in `dim` variables x1..xn. No stored coefficient is zero; the
/// zero polynomial has an empty term map.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t dim);

  static MultiPoly constant(std::size_t dim, const Rational& value);
  /// x_{index+1}, zero-based index.
  static MultiPoly variable(std::size_t dim, std::size_t index);
  /// sum_j coeffs[j] x_j + offset.
  static MultiPoly linear_form(std::span<const Rational> coeffs, const Rational& offset);

  std::size_t dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponent& e) const;

  /// Adds `coeff` to the coefficient of `e`, dropping it if it cancels.
  void add_term(const Exponent& e, const Rational& coeff);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& s);

  Rational evaluate(const QVector& x) const;
  double evaluate(std::span<const double> x) const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::size_t dim_;
  std::map<Exponent, Rational> terms_;
};

MultiPoly operator+(MultiPoly a, const MultiPoly& b);
MultiPoly operator-(MultiPoly a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(MultiPoly a, const Rational& s);
MultiPoly pow(const MultiPoly& p, unsigned k);

/// Q(x) = P(f(x)), expanded exactly by substituting the linear forms
/// (f(x))_i for x_i.
MultiPoly compose_affine(const MultiPoly& p, const AffineMap& f);

/// C with compose_affine(P, f) == C * P exactly, or nullopt.
/// Throws InputError for the zero polynomial or a dimension mismatch.
std::optional<Rational> scaling_constant(const MultiPoly& p, const AffineMap& f);

struct ScalingCertificate {
  AffineMap map;
  Rational constant;
  Rational fixed_point_value;  // P at the map's fixed point
};

/// Certificate for a contractive, invertible scaling factor; nullopt when the
/// proportionality fails. Throws InputError when f is not contractive or
/// not invertible.
std::optional<ScalingCertificate> certify_scaling_factor(const MultiPoly& p, const AffineMap& f);

/// Both maps are scaling factors for P and their fixed points differ.
bool is_self_affine_pair(const MultiPoly& p, const AffineMap& f, const AffineMap& g);

struct WordRecord {
  std::vector<std::size_t> word;  // f_{w0} o f_{w1} o ...
  QVector fixed_point;
  Rational value;     // P at the fixed point
  Rational constant;  // C_w from the composed map
  bool ok = false;
};

struct FixedPointSurfaceReport {
  std::size_t words_checked = 0;
  std::vector<WordRecord> words;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Enumerates every word of length 1..depth over `maps` breadth first and
/// checks that each composed map has its fixed point on S(P), that |C_w| < 1,
/// and that C_w equals the product of the letters' constants.
/// Throws InputError before enumeration if a map is not a contractive
/// scaling factor.
FixedPointSurfaceReport verify_fixed_points_on_surface(const MultiPoly& p, std::span<const AffineMap> maps,
                                                       std::size_t depth);

/// Text form "c * x1^a1 x2^a2 + ...". `dim` = 0 infers the number of
/// variables from the largest index used.
MultiPoly parse_polynomial(std::string_view text, std::size_t dim = 0);
std::string to_string(const MultiPoly& p);

}  // namespace saffine
