// Self-affine IFS on the moment curve eta(t) = (t, t^2, ..., t^n), t in [c, d].
//
// Each map f_i has lower-triangular linear part
//   T_i(k, j) = lambda^k * C(k, j) * (t_i / lambda - c)^(k - j),   j <= k,
// and translation -T_i * eta(c - t_i / lambda), which gives the exact identity
//   f_i(eta(t)) = eta(lambda * (t - c) + t_i).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "saffine/affine.hpp"
#include "saffine/ifs_json.hpp"

namespace saffine {

struct MomentCurveSpec {
  unsigned dim = 2;
  Rational c = 0;
  Rational d = 1;

  /// Throws InputError unless dim >= 2 and c < d.
  void validate() const;
};

/// (t, t^2, ..., t^n).
QVector eval_moment(unsigned n, const Rational& t);

/// Smallest k / 10^6 strictly above sqrt(n).
Rational sqrt_upper_bound(unsigned n);

/// 1 / (2^n r max{(2|c|+1)^n, (|c|+|d|+1)^n}) with r = sqrt_upper_bound(n):
/// an exact rational strictly below the admissibility bound on lambda.
Rational lambda_bound(const MomentCurveSpec& spec);

/// The same bound with the true sqrt(n), in double precision.
double lambda_bound_real(const MomentCurveSpec& spec);

/// Half of lambda_bound(spec).
Rational default_lambda(const MomentCurveSpec& spec);

/// ceil(1/lambda) anchors on a uniform grid from c to d - lambda (d - c).
/// Throws InputError unless 0 < lambda <= lambda_bound(spec).
std::vector<Rational> choose_anchors(const MomentCurveSpec& spec, const Rational& lambda);

/// Exact check that the images [t_i, t_i + lambda (d - c)] lie in [c, d] and
/// their union is [c, d].
bool anchors_tile_interval(const MomentCurveSpec& spec, const Rational& lambda, std::span<const Rational> anchors);

struct MomentIfsRecipe {
  MomentCurveSpec spec;
  Rational lambda;
  std::vector<Rational> anchors;
  IteratedFunctionSystem ifs;
};

/// The map for one anchor, without admissibility checks.
AffineMap moment_map(unsigned n, const Rational& c, const Rational& lambda, const Rational& anchor);

/// Builds the IFS. Throws InputError for an inadmissible lambda, anchors
/// outside [c, d], anchors that do not tile [c, d], or a map failing the
/// contraction certificate.
MomentIfsRecipe build_moment_ifs(const MomentCurveSpec& spec, const Rational& lambda,
                                 std::span<const Rational> anchors);

/// Defaults: lambda = default_lambda(spec), anchors = choose_anchors(...).
MomentIfsRecipe build_moment_ifs(const MomentCurveSpec& spec);

struct InvarianceViolation {
  std::size_t map_index = 0;
  Rational t;
  QVector image;     // f_i(eta(t))
  QVector expected;  // eta(lambda (t - c) + t_i)
};

struct InvarianceReport {
  std::size_t checks = 0;
  std::vector<InvarianceViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks f_i(eta(t)) == eta(lambda (t - c) + t_i) for every map and sample.
/// Work is split across hardware threads by map index.
InvarianceReport verify_moment_invariance(const MomentIfsRecipe& recipe, std::span<const Rational> samples);

/// `count` rationals in [c, d]: the endpoints c and d followed by random
/// points with denominators up to 1000 (SplitMix64 seeded by `seed`).
std::vector<Rational> sample_interval(const Rational& c, const Rational& d, std::size_t count, std::uint64_t seed);

/// Affine map sending eta(t) to eta(s (t - a)) for every t. Throws for s = 0.
AffineMap moment_homothety(unsigned n, const Rational& s, const Rational& a);

/// The recipe as IFS JSON with "meta": {"kind": "moment", "n", "c", "d",
/// "lambda", "anchors"}.
std::string recipe_to_json(const MomentIfsRecipe& recipe);

/// Reads an IFS JSON document whose meta describes a moment recipe. The maps
/// are taken as stored (not rebuilt) so that verification sees them.
MomentIfsRecipe recipe_from_json(std::string_view text);
MomentIfsRecipe recipe_from_parts(IteratedFunctionSystem ifs, const Json& meta);

}  // namespace saffine
