#include <cmath>

#include "doctest.h"
#include "saffine/errors.hpp"
#include "saffine/moment_curve.hpp"
#include "support.hpp"

using namespace saffine;
using saffine::testing::rational;

namespace {

// Oracle for the map: the unique affine map taking eta(s) to eta(lambda (s - c) + t)
// at n + 1 distinct points, solved as a linear system in its n^2 + n unknowns.
AffineMap interpolated_map(unsigned n, const Rational& c, const Rational& lambda, const Rational& t) {
  const std::size_t unknowns = n * n + n;
  std::vector<QVector> rows;
  QVector rhs;
  for (unsigned s = 0; s <= 2 * n; ++s) {
    const Rational x = c + s;
    const QVector src = eval_moment(n, x);
    const QVector dst = eval_moment(n, lambda * (x - c) + t);
    for (unsigned r = 0; r < n; ++r) {
      QVector row(unknowns);
      for (unsigned j = 0; j < n; ++j) row[r * n + j] = src[j];
      row[n * n + r] = 1;
      rows.push_back(row);
      rhs.push_back(dst[r]);
    }
  }
  const auto sol = solve(QMatrix::from_rows(rows), rhs);
  REQUIRE(sol);
  QMatrix m(n, n);
  QVector a(n);
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned j = 0; j < n; ++j) m(r, j) = (*sol)[r * n + j];
    a[r] = (*sol)[n * n + r];
  }
  return AffineMap(m, a);
}

}  // namespace

TEST_CASE("eval_moment") {
  CHECK(eval_moment(3, 0) == QVector{0, 0, 0});
  CHECK(eval_moment(3, 1) == QVector{1, 1, 1});
  CHECK(eval_moment(4, rational(1, 2)) == QVector{rational(1, 2), rational(1, 4), rational(1, 8), rational(1, 16)});
}

TEST_CASE("lambda bound") {
  const MomentCurveSpec unit{2, 0, 1};
  CHECK(sqrt_upper_bound(2) == rational(1414214, 1000000));
  CHECK(lambda_bound(unit) == rational(1000000, 4L * 1414214 * 4));
  CHECK(lambda_bound(unit) == rational(31250, 707107));
  CHECK(lambda_bound_real(unit) == doctest::Approx(1 / (16 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(lambda_bound_real(unit) == doctest::Approx(0.0441941).epsilon(1e-6));
  CHECK(to_double(lambda_bound(unit)) < lambda_bound_real(unit));
  const MomentCurveSpec symmetric{2, -1, 1};
  CHECK(lambda_bound_real(symmetric) == doctest::Approx(1 / (36 * std::sqrt(2.0))).epsilon(1e-14));
  for (unsigned n = 2; n <= 9; ++n) {
    const Rational r = sqrt_upper_bound(n);
    CHECK(r * r > n);
    CHECK(to_double(r) - std::sqrt(static_cast<double>(n)) <= 1e-6);
    const MomentCurveSpec s{n, rational(-1, 3), rational(2, 5)};
    CHECK(to_double(lambda_bound(s)) < lambda_bound_real(s));
  }
  CHECK(default_lambda(unit) * 2 == lambda_bound(unit));
  CHECK_THROWS_AS(lambda_bound(MomentCurveSpec{2, 1, 1}), InputError);
  CHECK_THROWS_AS(lambda_bound(MomentCurveSpec{1, 0, 1}), InputError);
}

TEST_CASE("anchors") {
  const MomentCurveSpec unit{2, 0, 1};
  const auto ts = choose_anchors(unit, rational(1, 32));
  REQUIRE(ts.size() == 32);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ts[i] == rational(static_cast<long>(i), 32));
  CHECK(anchors_tile_interval(unit, rational(1, 32), ts));
  CHECK_THROWS_AS(choose_anchors(unit, rational(1, 2)), InputError);
  CHECK_THROWS_AS(choose_anchors(unit, 0), InputError);

  const std::vector<Rational> gap{0, rational(1, 2)};
  CHECK_FALSE(anchors_tile_interval(unit, rational(1, 32), gap));
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Rational c = saffine::testing::random_rational(rng, 1, 9), d = saffine::testing::random_rational(rng, 1, 9);
    if (c == d) continue;
    if (c > d) std::swap(c, d);
    const MomentCurveSpec spec{2 + static_cast<unsigned>(trial % 3), c, d};
    const Rational lambda = default_lambda(spec);
    const auto anchors = choose_anchors(spec, lambda);
    CHECK(anchors.front() == c);
    CHECK(anchors.back() + lambda * (d - c) == d);
    CHECK(anchors_tile_interval(spec, lambda, anchors));
  }
}

TEST_CASE("map entries") {
  const MomentCurveSpec unit{2, 0, 1};
  const auto recipe = build_moment_ifs(unit, rational(1, 32), choose_anchors(unit, rational(1, 32)));
  REQUIRE(recipe.ifs.size() == 32);
  const AffineMap& t2 = recipe.ifs[1];
  CHECK(t2.linear() == QMatrix::from_rows({{rational(1, 32), 0}, {rational(1, 512), rational(1, 1024)}}));
  CHECK(t2.translation() == QVector{rational(1, 32), rational(1, 1024)});
  const AffineMap& t1 = recipe.ifs[0];
  CHECK(t1.linear() == QMatrix::diagonal(QVector{rational(1, 32), rational(1, 1024)}));
  CHECK(t1.translation() == QVector{0, 0});
  for (const auto& f : recipe.ifs.maps()) CHECK(row_sum_certificate(f.linear()));

  // Independent interpolation oracle for random parameters.
  SplitMix64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(trial % 4);
    const Rational c = saffine::testing::random_rational(rng, 2, 5);
    const Rational lambda = rational(1, 3 + static_cast<long>(rng.below(40)));
    const Rational t = saffine::testing::random_rational(rng, 2, 7);
    CHECK(moment_map(n, c, lambda, t) == interpolated_map(n, c, lambda, t));
  }
}

TEST_CASE("build rejects bad parameters") {
  const MomentCurveSpec unit{2, 0, 1};
  CHECK_THROWS_AS(build_moment_ifs(unit, rational(1, 2), std::vector<Rational>{0}), InputError);
  const std::vector<Rational> outside{0, 2};
  CHECK_THROWS_AS(build_moment_ifs(unit, rational(1, 32), outside), InputError);
  const std::vector<Rational> gap{0, rational(1, 2)};
  CHECK_THROWS_AS(build_moment_ifs(unit, rational(1, 32), gap), InputError);
}

TEST_CASE("invariance") {
  const MomentCurveSpec unit{2, 0, 1};
  const auto recipe = build_moment_ifs(unit, rational(1, 32), choose_anchors(unit, rational(1, 32)));
  CHECK(recipe.ifs[1](eval_moment(2, rational(1, 2))) == QVector{rational(3, 64), rational(9, 4096)});
  for (std::size_t i = 0; i < recipe.ifs.size(); ++i)
    CHECK(recipe.ifs[i](eval_moment(2, 0)) == eval_moment(2, recipe.anchors[i]));

  const auto samples = sample_interval(unit.c, unit.d, 100, 9);
  REQUIRE(samples.size() == 100);
  CHECK(samples[0] == 0);
  CHECK(samples[1] == 1);
  for (const auto& t : samples) CHECK((t >= 0 && t <= 1));
  const auto rep = verify_moment_invariance(recipe, samples);
  CHECK(rep.ok());
  CHECK(rep.checks == 3200);

  // A perturbed map is caught with an exact counterexample.
  std::vector<AffineMap> maps = recipe.ifs.maps();
  QVector shifted = maps[5].translation();
  shifted[1] += rational(1, 1000000);
  maps[5] = AffineMap(maps[5].linear(), shifted);
  const MomentIfsRecipe bad{recipe.spec, recipe.lambda, recipe.anchors, IteratedFunctionSystem(maps)};
  const auto caught = verify_moment_invariance(bad, samples);
  CHECK_FALSE(caught.ok());
  CHECK(caught.violations.size() == 100);
  CHECK(caught.violations.front().map_index == 5);
}

TEST_CASE("default build for n = 2..5") {
  for (unsigned n = 2; n <= 5; ++n) {
    const MomentCurveSpec spec{n, rational(-1, 4), rational(1, 3)};
    const auto recipe = build_moment_ifs(spec);
    CHECK(recipe.lambda == default_lambda(spec));
    for (const auto& f : recipe.ifs.maps()) {
      CHECK(row_sum_certificate(f.linear()));
      CHECK(operator_norm(f.linear()) < 1 - 1e-6);
    }
    CHECK(verify_moment_invariance(recipe, sample_interval(spec.c, spec.d, 5, n)).ok());
  }
}

TEST_CASE("homothety") {
  CHECK(moment_homothety(3, 1, 0) == AffineMap::identity(3));
  CHECK(moment_homothety(2, 1, 1) == AffineMap(QMatrix::from_rows({{1, 0}, {-2, 1}}), {-1, 1}));
  CHECK(moment_homothety(3, rational(1, 2), 0) ==
        AffineMap(QMatrix::diagonal(QVector{rational(1, 2), rational(1, 4), rational(1, 8)}), {0, 0, 0}));
  CHECK_THROWS_AS(moment_homothety(2, 0, 1), InputError);
  SplitMix64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(trial % 5);
    Rational s = saffine::testing::random_rational(rng, 3, 7);
    if (s == 0) s = 1;
    const Rational a = saffine::testing::random_rational(rng, 3, 7);
    const AffineMap h = moment_homothety(n, s, a);
    for (int k = 0; k < 5; ++k) {
      const Rational t = saffine::testing::random_rational(rng, 4, 11);
      CHECK(h(eval_moment(n, t)) == eval_moment(n, s * (t - a)));
    }
  }
}

TEST_CASE("recipe JSON round trip") {
  const MomentCurveSpec spec{3, rational(-1, 2), rational(1, 2)};
  const auto recipe = build_moment_ifs(spec);
  const std::string text = recipe_to_json(recipe);
  const auto back = recipe_from_json(text);
  CHECK(back.spec.dim == 3);
  CHECK(back.spec.c == spec.c);
  CHECK(back.lambda == recipe.lambda);
  CHECK(back.anchors == recipe.anchors);
  CHECK(recipe_to_json(back) == text);
}
