#include "doctest.h"
#include "saffine/attractor.hpp"
#include "saffine/errors.hpp"
#include "saffine/paraboloid.hpp"
#include "support.hpp"

using namespace saffine;
using saffine::testing::rational;

namespace {

ParaboloidSpec quarter_spec(unsigned n) {
  ParaboloidSpec spec{n, 0, rational(1, 4), {}};
  for (long k = 0; k < 4; ++k) spec.base_maps.push_back({rational(1, 4), rational(k, 16)});
  return spec;
}

}  // namespace

TEST_CASE("embedding and polynomial") {
  CHECK(eval_paraboloid_embedding({1, 2}) == QVector{1, 2, 5});
  CHECK(eval_paraboloid_embedding({rational(1, 2)}) == QVector{rational(1, 2), rational(1, 4)});
  CHECK(paraboloid_polynomial(3) == parse_polynomial("x1^2 + x2^2 - x3"));
  CHECK(paraboloid_polynomial(3).evaluate(eval_paraboloid_embedding({rational(2, 3), rational(-5, 7)})) == 0);
}

TEST_CASE("lifted map entries") {
  const AffineMap f = paraboloid_map(3, {rational(1, 2), rational(1, 3)});
  CHECK(f.linear() == QMatrix::from_rows({{rational(1, 2), 0, 0},
                                          {0, rational(1, 2), 0},
                                          {rational(1, 3), rational(1, 3), rational(1, 4)}}));
  CHECK(f.translation() == QVector{rational(1, 3), rational(1, 3), rational(2, 9)});
  const AffineMap g = paraboloid_map(4, {rational(1, 3), 0});
  CHECK(g.linear() == QMatrix::diagonal(QVector{rational(1, 3), rational(1, 3), rational(1, 3), rational(1, 9)}));
  CHECK(operator_norm(g.linear()) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("conjugation identity is exact") {
  SplitMix64 rng(31);
  for (unsigned n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      Rational c = saffine::testing::random_rational(rng, 1, 9);
      if (c == 0 || abs_value(c) == 1) c = rational(1, 2);
      const BaseMap base{c, saffine::testing::random_rational(rng, 2, 9)};
      const AffineMap f = paraboloid_map(n, base);
      const auto id = check_paraboloid_conjugation(n, f, base);
      CHECK(id.holds);
      CHECK(id.lhs == id.rhs);
      CHECK(scaling_constant(paraboloid_polynomial(n), f) == c * c);
      // Pointwise cross-check at a random base point.
      const QVector x = saffine::testing::random_vector(rng, n - 1, 3, 7);
      QVector cx = x;
      for (auto& v : cx) v = c * v + base.shift;
      CHECK(f(eval_paraboloid_embedding(x)) == eval_paraboloid_embedding(cx));
    }
  // The literal (d - 1) d^2 reading breaks the identity for n = 3.
  const BaseMap base{rational(1, 2), rational(1, 3)};
  const AffineMap literal = paraboloid_map(3, base);
  QVector t = literal.translation();
  t[2] = (base.shift - 1) * base.shift * base.shift;
  CHECK_FALSE(check_paraboloid_conjugation(3, AffineMap(literal.linear(), t), base).holds);
}

TEST_CASE("paraboloid input validation") {
  ParaboloidSpec spec = quarter_spec(3);
  CHECK_NOTHROW(spec.validate());
  spec.base_maps.pop_back();
  CHECK_THROWS_AS(spec.validate(), InputError);
  ParaboloidSpec one{3, 0, 1, {{1, 0}}};
  CHECK_THROWS_AS(one.validate(), InputError);
  ParaboloidSpec outside{3, 0, 1, {{rational(1, 2), 0}, {rational(1, 2), 1}}};
  CHECK_THROWS_AS(outside.validate(), InputError);
  ParaboloidSpec flipped{3, 0, 1, {{rational(-1, 2), rational(1, 2)}, {rational(1, 2), rational(1, 2)}}};
  CHECK_NOTHROW(flipped.validate());
}

TEST_CASE("built IFS and residuals") {
  for (unsigned n = 2; n <= 4; ++n) {
    const auto ifs = build_paraboloid_ifs(quarter_spec(n));
    CHECK(ifs.size() == 4);
    for (const auto& f : ifs.maps()) {
      CHECK(row_sum_certificate(f.linear()));
      CHECK(operator_norm(f.linear()) < 1 - 1e-6);
    }
  }
  const MultiPoly p = paraboloid_polynomial(3);
  PointCloud exact(3);
  SplitMix64 rng(2);
  for (int i = 0; i < 200; ++i)
    exact.push_back(to_doubles(eval_paraboloid_embedding(saffine::testing::random_vector(rng, 2, 1, 50))));
  CHECK(surface_residual(p, exact) <= 1e-12);

  const auto ifs = build_paraboloid_ifs(quarter_spec(3));
  CHECK(surface_residual(p, chaos_game(ifs, 100100, 100, 4)) <= 1e-9);

  PointCloud off(2);
  off.push_back(std::vector<double>{0, 1});
  CHECK(surface_residual(parse_polynomial("x2 - x1"), off) == 1.0);
}
