// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "saffine/attractor.hpp"
#include "saffine/compactness.hpp"
#include "saffine/curve_classifier.hpp"
#include "saffine/moment_curve.hpp"
#include "saffine/paraboloid.hpp"
#include "support.hpp"

using namespace saffine;
using saffine::testing::rational;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Random interval c < d with c, d in [-1/2, 1/2].
std::pair<Rational, Rational> random_interval(SplitMix64& rng) {
  for (;;) {
    Rational c = saffine::testing::random_rational(rng, 1, 20) / 2;
    Rational d = saffine::testing::random_rational(rng, 1, 20) / 2;
    if (c == d) continue;
    if (c > d) std::swap(c, d);
    return {c, d};
  }
}

std::vector<MomentIfsRecipe> moment_suite;
std::vector<IteratedFunctionSystem> paraboloid_suite;

Outcome moment_invariance() {
  Outcome out;
  SplitMix64 rng(2024);
  double worst = 0;
  std::size_t checks = 0;
  for (unsigned n = 2; n <= 5; ++n)
    for (int k = 0; k < 3; ++k) {
      const auto [c, d] = random_interval(rng);
      const auto t0 = Clock::now();
      const MomentCurveSpec spec{n, c, d};
      auto recipe = build_moment_ifs(spec);
      const auto samples = sample_interval(c, d, 100, rng.next());
      const auto rep = verify_moment_invariance(recipe, samples);
      const double secs = seconds_since(t0);
      worst = std::max(worst, secs);
      checks += rep.checks;
      out.require(rep.ok(), "violation for n = " + std::to_string(n));
      out.require(rep.checks == 100 * recipe.ifs.size(), "wrong check count");
      out.require(secs < 10, "n = " + std::to_string(n) + " took " + std::to_string(secs) + " s");
      moment_suite.push_back(std::move(recipe));
    }
  if (out.pass)
    out.detail = std::to_string(checks) + " exact checks, 0 violations, slowest (n, interval) " +
                 std::to_string(worst) + " s";
  return out;
}

Outcome contraction_certificates() {
  Outcome out;
  for (unsigned n = 2; n <= 4; ++n) {
    ParaboloidSpec quarter{n, 0, rational(1, 4), {}};
    for (long k = 0; k < 4; ++k) quarter.base_maps.push_back({rational(1, 4), rational(k, 16)});
    paraboloid_suite.push_back(build_paraboloid_ifs(quarter));
    ParaboloidSpec folded{n, 0, rational(1, 4), {}};
    for (long k : {1, 3}) {
      folded.base_maps.push_back({rational(-1, 4), rational(k, 16)});
      folded.base_maps.push_back({rational(1, 4), rational(k, 16)});
    }
    paraboloid_suite.push_back(build_paraboloid_ifs(folded));
  }
  std::size_t maps = 0;
  double worst = 0;
  auto check_all = [&](const IteratedFunctionSystem& ifs) {
    for (const auto& f : ifs.maps()) {
      ++maps;
      const double norm = operator_norm(f.linear());
      worst = std::max(worst, norm);
      out.require(row_sum_certificate(f.linear()), "row-sum certificate fails");
      out.require(norm < 1 - 1e-6, "spectral norm " + std::to_string(norm));
    }
  };
  for (const auto& r : moment_suite) check_all(r.ifs);
  for (const auto& ifs : paraboloid_suite) check_all(ifs);
  out.require(maps > 0, "no maps");
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu maps, largest spectral norm %.6g", maps, worst);
    out.detail = buf;
  }
  return out;
}

Outcome attractor_on_curve() {
  Outcome out;
  double worst = 0;
  const auto t0 = Clock::now();
  for (unsigned n : {2u, 3u}) {
    const auto recipe = build_moment_ifs(MomentCurveSpec{n, 0, 1});
    const auto cloud = chaos_game(recipe.ifs, 100000 + 100, 100, 11 + n);
    out.require(cloud.size() == 100000, "cloud size");
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto p = cloud.point(i);
      double power = p[0];
      for (std::size_t k = 1; k < n; ++k) {
        power *= p[0];
        worst = std::max(worst, std::abs(p[k] - power));
      }
    }
  }
  const double secs = seconds_since(t0);
  out.require(worst <= 1e-9, "graph residual " + std::to_string(worst));
  out.require(secs < 5, "took " + std::to_string(secs) + " s");
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "max graph residual %.3g, %.2f s", worst, secs);
    out.detail = buf;
  }
  return out;
}

Outcome example_line_pair() {
  Outcome out;
  const MultiPoly p = parse_polynomial("x2 - x1");
  const AffineMap f = AffineMap::uniform_scaling(2, rational(1, 2));
  const AffineMap g = AffineMap::uniform_scaling(2, rational(1, 2), rational(1, 2));
  out.require(scaling_constant(p, f) == rational(1, 2), "C_f != 1/2");
  out.require(scaling_constant(p, g) == rational(1, 2), "C_g != 1/2");
  out.require(is_self_affine_pair(p, f, g), "not a self-affine pair");
  const std::vector<AffineMap> maps{f, g};
  const auto rep = verify_fixed_points_on_surface(p, maps, 6);
  out.require(rep.ok(), rep.ok() ? "" : rep.violations.front());
  out.require(rep.words_checked == 126, "word count " + std::to_string(rep.words_checked));
  for (const auto& w : rep.words) {
    out.require(w.value == 0, "fixed point off S(P)");
    out.require(abs_value(w.constant) == power(rational(1, 2), static_cast<unsigned>(w.word.size())),
                "|C_w| != 2^-|w|");
  }
  if (out.pass) out.detail = "C = 1/2 for both maps, 126 words, P(x_w) = 0 and |C_w| = 2^-|w|";
  return out;
}

Outcome example_paraboloid() {
  Outcome out;
  SplitMix64 rng(43);
  std::size_t identities = 0;
  for (unsigned n = 2; n <= 4; ++n)
    for (int k = 0; k < 10; ++k) {
      Rational c = saffine::testing::random_rational(rng, 1, 11);
      if (c == 0 || abs_value(c) == 1) c = rational(-2, 3);
      const BaseMap base{c, saffine::testing::random_rational(rng, 3, 11)};
      const AffineMap f = paraboloid_map(n, base);
      out.require(f.translation().back() == Rational(n - 1) * base.shift * base.shift, "translation entry");
      const auto id = check_paraboloid_conjugation(n, f, base);
      out.require(id.holds && id.lhs == id.rhs, "identity fails for n = " + std::to_string(n));
      ++identities;
    }
  ParaboloidSpec spec{3, 0, rational(1, 4), {}};
  for (long k = 0; k < 4; ++k) spec.base_maps.push_back({rational(1, 4), rational(k, 16)});
  const auto cloud = chaos_game(build_paraboloid_ifs(spec), 100000 + 100, 100, 5);
  const double residual = surface_residual(paraboloid_polynomial(3), cloud);
  out.require(residual <= 1e-9, "residual " + std::to_string(residual));
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu symbolic identities hold, n = 3 residual %.3g over 1e5 points", identities,
                  residual);
    out.detail = buf;
  }
  return out;
}

Outcome circle_negative_control() {
  Outcome out;
  const MultiPoly circle = parse_polynomial("x1^2 + x2^2 - 1");
  SplitMix64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const AffineMap f = saffine::testing::random_contraction(rng, 2);
    out.require(is_contractive(f).contractive, "generator produced a non-contraction");
    out.require(!scaling_constant(circle, f), "circle scaling constant found for a random map");
  }
  std::size_t family = 0;
  for (long r = 1; r <= 10; ++r)
    for (long u = 0; u < 10; ++u)
      for (long a = 0; a < 10; ++a) {
        const Rational rho = rational(r, 11);
        const Rational s = rational(u - 5, 3);  // rotation from the Pythagorean parametrization
        const Rational den = 1 + s * s;
        const Rational cs = (1 - s * s) / den, sn = 2 * s / den;
        const QMatrix m = QMatrix::from_rows({{rho * cs, -rho * sn}, {rho * sn, rho * cs}});
        const AffineMap f(m, {rational(a - 5, 4), rational(3 - a, 7)});
        out.require(operator_norm(m) < 1, "family member not contractive");
        out.require(!scaling_constant(circle, f), "circle scaling constant found in the rotation family");
        ++family;
      }
  if (out.pass) out.detail = "1000 random maps and " + std::to_string(family) + " rotation-family maps, none scale P";
  return out;
}

Outcome compactness_mechanism() {
  Outcome out;
  const auto t0 = Clock::now();
  const MultiPoly circle = parse_polynomial("x1^2 + x2^2 - 1");
  const auto seq = pullback_sequence(circle, AffineMap::uniform_scaling(2, rational(1, 2)), 10);
  const auto span = coefficient_span_dimension(seq);
  out.require(span.rank == 2, "rank " + std::to_string(span.rank));
  out.require(span.bound == 6, "bound");
  for (std::size_t r : span.rank_so_far) out.require(r <= 6, "rank above binomial bound");
  const auto w = dependency_witness(seq, 2, span.basis);
  out.require(span.basis == std::vector<std::size_t>{0, 1} && w == QVector{-4, 5}, "witness");
  out.require(seq.polys[2] == seq.polys[0] * w[0] + seq.polys[1] * w[1], "re-expansion");
  const auto rep = diameter_decay_report(seq, circle_zero_samples(32));
  out.require(rep.ok(), rep.ok() ? "" : rep.failures.front());
  for (const auto& row : rep.rows)
    out.require(std::abs(row.sampled_diameter - 2 * std::pow(0.5, static_cast<double>(row.j))) <= 1e-9,
                "diameter at j = " + std::to_string(row.j));
  const double secs = seconds_since(t0);
  out.require(secs < 2, "took " + std::to_string(secs) + " s");
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "rank 2 <= 6, P_2 = -4 P_0 + 5 P_1, diameters 2^(1-j) for j <= 10, %.3f s", secs);
    out.detail = buf;
  }
  return out;
}

Outcome series_kernel() {
  Outcome out;
  SplitMix64 rng(16);
  for (int i = 0; i < 100; ++i) {
    Series s(16);
    while (s[1] == 0) s[1] = saffine::testing::random_rational(rng, 4, 9);
    for (unsigned k = 2; k <= 16; ++k) s[k] = saffine::testing::random_rational(rng, 4, 9);
    out.require(series_compose(s, series_reverse(s)) == Series::identity(16), "compose(s, reverse(s)) != t");
  }
  std::vector<Rational> t_plus_t2(9);
  t_plus_t2[1] = t_plus_t2[2] = 1;
  const auto r = series_reverse(Series(t_plus_t2));
  out.require(r.coefficients() == saffine::testing::lagrange_reverse(t_plus_t2), "Lagrange oracle mismatch");
  if (out.pass) out.detail = "100 germs reverse exactly to order 16; reverse(t + t^2) matches Lagrange through order 8";
  return out;
}

VectorSeries monomial_germ(std::vector<unsigned> exps) {
  std::vector<std::vector<Rational>> coords;
  for (unsigned e : exps) {
    std::vector<Rational> c(e + 1);
    c[e] = 1;
    coords.push_back(c);
  }
  return taylor_shift(coords, 0, kDefaultSeriesOrder);
}

Outcome classifier() {
  Outcome out;
  const auto moment = monomial_germ({1, 2, 3});
  const auto gap = monomial_germ({1, 3});
  const QMatrix m3 = QMatrix::diagonal(QVector{rational(1, 2), rational(1, 4), rational(1, 8)});
  const QMatrix m2 = QMatrix::diagonal(QVector{rational(1, 2), rational(1, 8)});
  const Rational t1 = rational(1, 4);

  const auto a = classify_curve(moment, m3, QMatrix::identity(3), t1);
  out.require(a.verdict == Verdict::MomentImage, "moment verdict");
  out.require(a.exponents == std::vector<unsigned>{1, 2, 3}, "moment exponents");
  const auto b = classify_curve(gap, m2, QMatrix::identity(2), t1);
  out.require(b.verdict == Verdict::ExponentGap, "gap verdict");
  out.require(b.recenter && !b.recenter->feasible && b.recenter->missing_degree == 2, "gap witness");
  out.require(b.stages.back().find("missing monomial t^2") != std::string::npos, "gap witness text");

  SplitMix64 rng(20);
  for (int i = 0; i < 20; ++i) {
    const QMatrix q3 = saffine::testing::random_invertible(rng, 3);
    const auto ca = classify_curve(apply_affine(q3, saffine::testing::random_vector(rng, 3, 3), moment),
                                   q3 * m3 * *inverse(q3), q3, t1);
    out.require(ca.verdict == a.verdict && ca.exponents == a.exponents, "moment verdict changed under conjugation");
    const QMatrix q2 = saffine::testing::random_invertible(rng, 2);
    const auto cb = classify_curve(apply_affine(q2, saffine::testing::random_vector(rng, 2, 3), gap),
                                   q2 * m2 * *inverse(q2), q2, t1);
    out.require(cb.verdict == b.verdict && cb.exponents == b.exponents &&
                    cb.recenter->missing_degree == b.recenter->missing_degree,
                "gap verdict changed under conjugation");
  }

  const GraphForm gf = graph_form(moment);
  const Rational l = rational(1, 2);
  const auto jordan = check_conjugation(gf, QMatrix::from_rows({{l, 0, 0}, {0, l * l, 1}, {0, 0, l * l * l}}));
  out.require(!jordan.pass && jordan.mismatch.has_value(), "Jordan block passes");
  const auto tangent_jordan = check_conjugation(gf, QMatrix::from_rows({{l, 1, 0}, {0, l * l, 0}, {0, 0, l * l * l}}));
  out.require(!tangent_jordan.pass && tangent_jordan.mismatch.has_value(), "tangent Jordan block passes");
  const Rational ca = rational(3, 20), sb = rational(1, 5);
  const auto rotation = check_conjugation(gf, QMatrix::from_rows({{l, 0, 0}, {0, ca, -sb}, {0, sb, ca}}));
  out.require(!rotation.pass && rotation.mismatch && rotation.mismatch->degree == 2, "rotation block passes");
  if (out.pass)
    out.detail = "moment p = (1,2,3); gap p = (1,3) missing t^2; 20 conjugations each; Jordan and rotation blocks fail";
  return out;
}

Outcome recenter_grid() {
  Outcome out;
  const auto t0 = Clock::now();
  const std::vector<Rational> t1s{1, -1, rational(1, 2), rational(-1, 2), 2};
  std::size_t profiles = 0, solves = 0;
  // Every strictly increasing p with p_1 = 1, n <= 6, p_n <= 12: subsets of {2..12} of size <= 5.
  for (unsigned mask = 0; mask < (1u << 11); ++mask) {
    if (__builtin_popcount(mask) > 5) continue;
    std::vector<unsigned> p{1};
    for (unsigned b = 0; b < 11; ++b)
      if (mask & (1u << b)) p.push_back(b + 2);
    bool consecutive = true;
    for (std::size_t k = 0; k < p.size(); ++k) consecutive = consecutive && p[k] == k + 1;
    ++profiles;
    for (const auto& t1 : t1s) {
      const auto res = solve_recenter(p, t1);
      ++solves;
      out.require(res.feasible == consecutive, "wrong feasibility");
    }
  }
  const double secs = seconds_since(t0);
  out.require(secs < 60, "took " + std::to_string(secs) + " s");
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu profiles x 5 values of t1 = %zu solves, feasible exactly on p = (1..n), %.2f s",
                  profiles, solves, secs);
    out.detail = buf;
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"moment IFS exact invariance, n = 2..5", moment_invariance},
      {"contraction certificates, moment and paraboloid suites", contraction_certificates},
      {"chaos-game attractor on the moment curve", attractor_on_curve},
      {"line with two half-scalings: scaling constants and fixed points", example_line_pair},
      {"paraboloid conjugation identity and attractor residual", example_paraboloid},
      {"circle admits no contractive scaling map", circle_negative_control},
      {"pullback rank, dependency witness and diameter decay", compactness_mechanism},
      {"series reversion kernel", series_kernel},
      {"curve classifier verdicts", classifier},
      {"recentering feasibility grid", recenter_grid},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
