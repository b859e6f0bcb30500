#include "doctest.h"
#include "saffine/errors.hpp"
#include "saffine/polynomial.hpp"
#include "support.hpp"

using namespace saffine;
using saffine::testing::rational;

namespace {

const MultiPoly line = parse_polynomial("x2 - x1");
const MultiPoly circle = parse_polynomial("x1^2 + x2^2 - 1");
const AffineMap f_half = AffineMap::uniform_scaling(2, rational(1, 2));
const AffineMap g_half = AffineMap::uniform_scaling(2, rational(1, 2), rational(1, 2));

MultiPoly random_poly(SplitMix64& rng, std::size_t dim, unsigned max_deg) {
  MultiPoly p(dim);
  const int terms = 1 + static_cast<int>(rng.below(6));
  for (int t = 0; t < terms; ++t) {
    Exponent e(dim);
    unsigned budget = static_cast<unsigned>(rng.below(max_deg + 1));
    for (std::size_t i = 0; i < dim && budget > 0; ++i) {
      const unsigned k = static_cast<unsigned>(rng.below(budget + 1));
      e[i] = k;
      budget -= k;
    }
    p.add_term(e, saffine::testing::random_rational(rng, 3, 7));
  }
  return p;
}

}  // namespace

TEST_CASE("parser and printer") {
  CHECK(to_string(line) == "-x1 + x2");
  const MultiPoly p = parse_polynomial(" 3/4 * x1^2 x3  - 1/2*x2+ 7 ");
  CHECK(p.dim() == 3);
  CHECK(p.degree() == 3);
  CHECK(p.coefficient({2, 0, 1}) == rational(3, 4));
  CHECK(p.coefficient({0, 0, 0}) == 7);
  CHECK(parse_polynomial(to_string(p), 3) == p);
  CHECK(parse_polynomial("x1 - x1", 2).is_zero());
  CHECK(parse_polynomial("x1", 4).dim() == 4);
  CHECK_THROWS_AS(parse_polynomial("x1^-2"), InputError);
  CHECK_THROWS_AS(parse_polynomial("0.5 * x1"), InputError);
  CHECK_THROWS_AS(parse_polynomial("x0"), InputError);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), InputError);
  CHECK_THROWS_AS(parse_polynomial("x1 +"), InputError);
}

TEST_CASE("evaluate examples") {
  CHECK(MultiPoly(2).evaluate(QVector{rational(3, 7), 5}) == 0);
  CHECK(line.evaluate(QVector{1, 1}) == 0);
  CHECK(circle.evaluate(QVector{1, 0}) == 0);
  CHECK(circle.evaluate(QVector{rational(3, 5), rational(4, 5)}) == 0);
  CHECK_THROWS_AS(circle.evaluate(QVector{1}), InputError);
}

TEST_CASE("compose_affine examples") {
  CHECK(compose_affine(circle, AffineMap::identity(2)) == circle);
  CHECK(compose_affine(line, f_half) == parse_polynomial("1/2*x2 - 1/2*x1"));
  CHECK(compose_affine(circle, f_half) == parse_polynomial("1/4*x1^2 + 1/4*x2^2 - 1"));
  CHECK_THROWS_AS(compose_affine(circle, AffineMap::identity(3)), InputError);
}

TEST_CASE("compose_affine agrees with pointwise evaluation") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const MultiPoly p = random_poly(rng, dim, 4);
    const AffineMap f(saffine::testing::random_matrix(rng, dim, 2, 5), saffine::testing::random_vector(rng, dim, 2, 5));
    const MultiPoly q = compose_affine(p, f);
    for (int s = 0; s < 5; ++s) {
      const QVector x = saffine::testing::random_vector(rng, dim, 3, 9);
      CHECK(q.evaluate(x) == p.evaluate(f(x)));
    }
  }
}

TEST_CASE("functoriality, degree and homogeneity") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const MultiPoly p = random_poly(rng, dim, 4);
    const AffineMap f(saffine::testing::random_invertible(rng, dim), saffine::testing::random_vector(rng, dim));
    const AffineMap g(saffine::testing::random_invertible(rng, dim), saffine::testing::random_vector(rng, dim));
    CHECK(compose_affine(compose_affine(p, f), g) == compose_affine(p, compose(f, g)));
    CHECK(compose_affine(p, f).degree() == p.degree());
  }
  for (const Rational& alpha : {Rational(3), rational(-2, 7)}) {
    CHECK(scaling_constant(line * alpha, f_half) == scaling_constant(line, f_half));
    CHECK(scaling_constant(line * alpha, g_half) == rational(1, 2));
  }
}

TEST_CASE("scaling constants") {
  CHECK(scaling_constant(line, f_half) == rational(1, 2));
  CHECK(scaling_constant(line, g_half) == rational(1, 2));
  CHECK_FALSE(scaling_constant(circle, f_half));
  CHECK_THROWS_AS(scaling_constant(MultiPoly(2), f_half), InputError);

  // Multiplicativity.
  const auto cf = scaling_constant(line, f_half), cg = scaling_constant(line, g_half);
  CHECK(scaling_constant(line, compose(f_half, g_half)) == *cf * *cg);
  const MultiPoly para = parse_polynomial("x1^2 - x2");
  const AffineMap p1(QMatrix::from_rows({{rational(1, 3), 0}, {0, rational(1, 9)}}), {0, 0});
  const AffineMap p2(QMatrix::from_rows({{rational(1, 3), 0}, {rational(4, 9), rational(1, 9)}}),
                     {rational(2, 3), rational(4, 9)});
  CHECK(scaling_constant(para, p1) == rational(1, 9));
  CHECK(scaling_constant(para, p2) == rational(1, 9));
  CHECK(scaling_constant(para, compose(p1, p2)) == rational(1, 81));

  const auto cert = certify_scaling_factor(line, g_half);
  REQUIRE(cert);
  CHECK(cert->constant == rational(1, 2));
  CHECK(cert->fixed_point_value == 0);
  CHECK(abs_value(cert->constant) < 1);
  CHECK_THROWS_AS(certify_scaling_factor(line, AffineMap::uniform_scaling(2, 2)), InputError);
  CHECK_THROWS_AS(certify_scaling_factor(line, AffineMap(QMatrix(2, 2), {0, 0})), InputError);
}

TEST_CASE("self-affine pairs and fixed points on the surface") {
  CHECK(is_self_affine_pair(line, f_half, g_half));
  CHECK_FALSE(is_self_affine_pair(line, f_half, f_half));
  CHECK_FALSE(is_self_affine_pair(circle, f_half, g_half));

  const std::vector<AffineMap> maps{f_half, g_half};
  const auto one = verify_fixed_points_on_surface(line, maps, 1);
  CHECK(one.ok());
  REQUIRE(one.words.size() == 2);
  CHECK(one.words[0].fixed_point == QVector{0, 0});
  CHECK(one.words[1].fixed_point == QVector{1, 1});

  const auto six = verify_fixed_points_on_surface(line, maps, 6);
  CHECK(six.ok());
  CHECK(six.words_checked == 126);
  for (const auto& w : six.words) CHECK(w.constant == power(rational(1, 2), static_cast<unsigned>(w.word.size())));

  const std::vector<AffineMap> single{g_half};
  CHECK(verify_fixed_points_on_surface(line, single, 1).ok());
  const std::vector<AffineMap> with_circle{f_half};
  CHECK_THROWS_AS(verify_fixed_points_on_surface(circle, with_circle, 2), InputError);
}
