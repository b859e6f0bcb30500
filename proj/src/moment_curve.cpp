#include "saffine/moment_curve.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "saffine/errors.hpp"
#include "saffine/random.hpp"

namespace saffine {

void MomentCurveSpec::validate() const {
  if (dim < 2) throw InputError("moment curve needs n >= 2");
  if (!(c < d)) throw InputError("moment curve interval needs c < d");
}

QVector eval_moment(unsigned n, const Rational& t) {
  QVector out(n);
  Rational p = 1;
  for (unsigned k = 0; k < n; ++k) {
    p *= t;
    out[k] = p;
  }
  return out;
}

Rational sqrt_upper_bound(unsigned n) {
  mpz_class scaled = mpz_class(n) * mpz_class("1000000000000");
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rational r(root + 1, mpz_class(1000000));
  r.canonicalize();
  return r;
}

namespace {

Rational bound_denominator_core(const MomentCurveSpec& spec) {
  const Rational ac = abs_value(spec.c), ad = abs_value(spec.d);
  const Rational a = power(2 * ac + 1, spec.dim);
  const Rational b = power(ac + ad + 1, spec.dim);
  return power(Rational(2), spec.dim) * std::max(a, b);
}

}  // namespace

Rational lambda_bound(const MomentCurveSpec& spec) {
  spec.validate();
  return 1 / (bound_denominator_core(spec) * sqrt_upper_bound(spec.dim));
}

double lambda_bound_real(const MomentCurveSpec& spec) {
  spec.validate();
  return 1.0 / (to_double(bound_denominator_core(spec)) * std::sqrt(static_cast<double>(spec.dim)));
}

Rational default_lambda(const MomentCurveSpec& spec) { return lambda_bound(spec) / 2; }

namespace {

constexpr unsigned long kMaxMaps = 5'000'000;

void check_lambda(const MomentCurveSpec& spec, const Rational& lambda) {
  if (lambda <= 0) throw InputError("lambda must be positive");
  const Rational bound = lambda_bound(spec);
  if (lambda > bound)
    throw InputError("lambda = " + to_string(lambda) + " exceeds the admissible bound " + to_string(bound) +
                     " (~" + std::to_string(to_double(bound)) + ")");
}

}  // namespace

std::vector<Rational> choose_anchors(const MomentCurveSpec& spec, const Rational& lambda) {
  spec.validate();
  check_lambda(spec, lambda);
  mpz_class count;
  mpz_cdiv_q(count.get_mpz_t(), lambda.get_den_mpz_t(), lambda.get_num_mpz_t());
  if (count > kMaxMaps) throw InputError("lambda too small: more than 5e6 maps");
  const unsigned long ell = count.get_ui();
  const Rational step = (spec.d - spec.c) * (1 - lambda) / Rational(static_cast<long>(ell - 1));
  std::vector<Rational> anchors;
  anchors.reserve(ell);
  for (unsigned long i = 0; i < ell; ++i) anchors.push_back(spec.c + Rational(static_cast<long>(i)) * step);
  return anchors;
}

bool anchors_tile_interval(const MomentCurveSpec& spec, const Rational& lambda, std::span<const Rational> anchors) {
  if (anchors.empty()) return false;
  const Rational width = lambda * (spec.d - spec.c);
  std::vector<Rational> sorted(anchors.begin(), anchors.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() != spec.c) return false;
  Rational reach = spec.c;
  for (const auto& t : sorted) {
    if (t < spec.c || t + width > spec.d) return false;
    if (t > reach) return false;  // gap
    reach = std::max(reach, Rational(t + width));
  }
  return reach == spec.d;
}

AffineMap moment_map(unsigned n, const Rational& c, const Rational& lambda, const Rational& anchor) {
  const Rational u = anchor / lambda - c;
  QMatrix t(n, n);
  std::vector<Rational> u_pow(n + 1);
  u_pow[0] = 1;
  for (unsigned k = 1; k <= n; ++k) u_pow[k] = u_pow[k - 1] * u;
  Rational lam_k = 1;
  for (unsigned k = 1; k <= n; ++k) {
    lam_k *= lambda;
    for (unsigned j = 1; j <= k; ++j) t(k - 1, j - 1) = lam_k * binomial(k, j) * u_pow[k - j];
  }
  QVector shift = scaled(t * eval_moment(n, -u), -1);
  return {std::move(t), std::move(shift)};
}

MomentIfsRecipe build_moment_ifs(const MomentCurveSpec& spec, const Rational& lambda,
                                 std::span<const Rational> anchors) {
  spec.validate();
  check_lambda(spec, lambda);
  if (anchors.empty()) throw InputError("no anchors");
  for (const auto& t : anchors)
    if (t < spec.c || t > spec.d) throw InputError("anchor " + to_string(t) + " lies outside [c, d]");
  if (!anchors_tile_interval(spec, lambda, anchors))
    throw InputError("the anchor images do not cover [c, d] without gaps");
  std::vector<AffineMap> maps;
  maps.reserve(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    AffineMap f = moment_map(spec.dim, spec.c, lambda, anchors[i]);
    if (!row_sum_certificate(f.linear()))
      throw InputError("map " + std::to_string(i) + " fails the row-sum contraction bound");
    maps.push_back(std::move(f));
  }
  return {spec, lambda, std::vector<Rational>(anchors.begin(), anchors.end()), IteratedFunctionSystem(std::move(maps))};
}

MomentIfsRecipe build_moment_ifs(const MomentCurveSpec& spec) {
  const Rational lambda = default_lambda(spec);
  const auto anchors = choose_anchors(spec, lambda);
  return build_moment_ifs(spec, lambda, anchors);
}

InvarianceReport verify_moment_invariance(const MomentIfsRecipe& recipe, std::span<const Rational> samples) {
  const auto& spec = recipe.spec;
  const auto& maps = recipe.ifs.maps();
  if (recipe.anchors.size() != maps.size()) throw InputError("recipe has a different number of anchors and maps");
  for (const auto& t : samples)
    if (t < spec.c || t > spec.d) throw InputError("sample " + to_string(t) + " lies outside [c, d]");

  std::vector<QVector> curve_points;
  curve_points.reserve(samples.size());
  for (const auto& t : samples) curve_points.push_back(eval_moment(spec.dim, t));

  InvarianceReport report;
  std::mutex mu;
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, maps.size() / 8));
  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<InvarianceViolation> local;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t s = 0; s < samples.size(); ++s) {
        QVector image = maps[i](curve_points[s]);
        QVector expected = eval_moment(spec.dim, recipe.lambda * (samples[s] - spec.c) + recipe.anchors[i]);
        if (image != expected) local.push_back({i, samples[s], std::move(image), std::move(expected)});
      }
    }
    std::lock_guard lock(mu);
    for (auto& v : local) report.violations.push_back(std::move(v));
  };
  std::vector<std::thread> threads;
  const std::size_t chunk = (maps.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk, end = std::min(maps.size(), begin + chunk);
    if (begin < end) threads.emplace_back(run, begin, end);
  }
  for (auto& th : threads) th.join();
  std::sort(report.violations.begin(), report.violations.end(), [](const auto& a, const auto& b) {
    return a.map_index != b.map_index ? a.map_index < b.map_index : a.t < b.t;
  });
  report.checks = maps.size() * samples.size();
  return report;
}

std::vector<Rational> sample_interval(const Rational& c, const Rational& d, std::size_t count, std::uint64_t seed) {
  std::vector<Rational> out;
  if (count == 0) return out;
  out.push_back(c);
  if (count > 1) out.push_back(d);
  SplitMix64 rng(seed);
  while (out.size() < count) {
    const long den = 1 + static_cast<long>(rng.below(1000));
    const long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(den) + 1));
    out.push_back(c + (d - c) * Rational(num, den));
    out.back().canonicalize();
  }
  return out;
}

AffineMap moment_homothety(unsigned n, const Rational& s, const Rational& a) {
  if (s == 0) throw InputError("moment_homothety: s must be nonzero");
  if (n == 0) throw InputError("moment_homothety: n must be positive");
  // s^k (t - a)^k = sum_j s^k C(k, j) (-a)^(k - j) t^j
  QMatrix m(n, n);
  QVector shift(n);
  const Rational neg_a = -a;
  for (unsigned k = 1; k <= n; ++k) {
    const Rational sk = power(s, k);
    for (unsigned j = 1; j <= k; ++j) m(k - 1, j - 1) = sk * binomial(k, j) * power(neg_a, k - j);
    shift[k - 1] = sk * power(neg_a, k);
  }
  return {std::move(m), std::move(shift)};
}

std::string recipe_to_json(const MomentIfsRecipe& recipe) {
  Json meta = Json::object();
  meta["kind"] = "moment";
  meta["n"] = recipe.spec.dim;
  meta["c"] = to_string(recipe.spec.c);
  meta["d"] = to_string(recipe.spec.d);
  meta["lambda"] = to_string(recipe.lambda);
  meta["anchors"] = to_json(recipe.anchors);
  return ifs_to_json(recipe.ifs, meta);
}

MomentIfsRecipe recipe_from_parts(IteratedFunctionSystem ifs, const Json& meta) {
  if (!meta.is_object() || meta.value("kind", "") != "moment")
    throw InputError("IFS document has no moment-curve \"meta\" object");
  for (const char* key : {"n", "c", "d", "lambda", "anchors"})
    if (!meta.contains(key)) throw InputError(std::string("meta is missing \"") + key + "\"");
  if (!meta["n"].is_number_unsigned()) throw InputError("meta \"n\" must be a positive integer");
  MomentCurveSpec spec{meta["n"].get<unsigned>(), rational_from_json(meta["c"]), rational_from_json(meta["d"])};
  spec.validate();
  if (spec.dim != ifs.dim()) throw InputError("meta n does not match the IFS dimension");
  QVector anchors = vector_from_json(meta["anchors"]);
  if (anchors.size() != ifs.size()) throw InputError("meta lists a different number of anchors than maps");
  return {spec, rational_from_json(meta["lambda"]), std::move(anchors), std::move(ifs)};
}

MomentIfsRecipe recipe_from_json(std::string_view text) {
  Json meta;
  IteratedFunctionSystem ifs = parse_ifs_json(text, &meta);
  return recipe_from_parts(std::move(ifs), meta);
}

}  // namespace saffine
