// Self-affine sets on the paraboloid S(P), P = x1^2 + ... + x_{n-1}^2 - x_n.
//
// A base map x -> c x + d on each of the first n-1 coordinates lifts to
//   f(x) = [c I_{n-1}, 0; 2cd ... 2cd, c^2] x + (d, ..., d, (n-1) d^2),
// which satisfies f(eta(x)) = eta(c x + d) for the embedding
// eta(x) = (x, |x|^2).
#pragma once

#include <vector>

#include "saffine/affine.hpp"
#include "saffine/polynomial.hpp"

namespace saffine {

struct BaseMap {
  Rational scale;  // c
  Rational shift;  // d
};

struct ParaboloidSpec {
  unsigned dim = 3;
  Rational a = 0;
  Rational b = 1;
  std::vector<BaseMap> base_maps;

  /// Throws InputError unless dim >= 2, a < b, 0 < |c_i| < 1, and the images
  /// of [a, b] under the base maps cover exactly [a, b].
  void validate() const;
};

/// (x_1, ..., x_{n-1}, x_1^2 + ... + x_{n-1}^2).
QVector eval_paraboloid_embedding(const QVector& x);

/// x1^2 + ... + x_{n-1}^2 - x_n in n variables.
MultiPoly paraboloid_polynomial(unsigned n);

/// The lifted map in dimension n (n >= 2).
AffineMap paraboloid_map(unsigned n, const BaseMap& base);

IteratedFunctionSystem build_paraboloid_ifs(const ParaboloidSpec& spec);

struct ConjugationIdentity {
  bool holds = false;
  std::vector<MultiPoly> lhs;  // components of f(eta(x)) in n-1 variables
  std::vector<MultiPoly> rhs;  // components of eta(c x + d)
};

/// Expands both sides of f o eta = eta o (c . + d) as polynomials in
/// x_1..x_{n-1} and compares them term by term.
ConjugationIdentity check_paraboloid_conjugation(unsigned n, const AffineMap& f, const BaseMap& base);

/// max over points of |P(point)|, in double precision.
double surface_residual(const MultiPoly& p, const PointCloud& cloud);

}  // namespace saffine
