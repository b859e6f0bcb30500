#include "saffine/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "saffine/attractor.hpp"
#include "saffine/errors.hpp"
#include "saffine/random.hpp"

namespace saffine {

PullbackSequence pullback_sequence(const MultiPoly& p, const AffineMap& f, std::size_t m) {
  if (p.degree() < 1) throw InputError("pullback_sequence: P must be non-constant");
  if (p.dim() != f.dim()) throw InputError("pullback_sequence: dimension mismatch");
  if (determinant(f.linear()) == 0) throw InputError("pullback_sequence: map is not invertible");
  if (!is_contractive(f).contractive) throw InputError("pullback_sequence: map is not contractive");
  const AffineMap f_inv = invert(f);
  PullbackSequence seq{p, f, {p}};
  for (std::size_t j = 1; j <= m; ++j) seq.polys.push_back(compose_affine(seq.polys.back(), f_inv));
  return seq;
}

namespace {

// Monomials of degree <= deg in a fixed order (all those used by the sequence).
std::vector<Exponent> monomial_support(const PullbackSequence& seq) {
  std::vector<Exponent> keys;
  for (const auto& q : seq.polys)
    for (const auto& [e, c] : q.terms()) keys.push_back(e);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

QVector coefficient_vector(const MultiPoly& q, const std::vector<Exponent>& keys) {
  QVector v(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) v[i] = q.coefficient(keys[i]);
  return v;
}

std::size_t binomial_size(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SpanDimension coefficient_span_dimension(const PullbackSequence& seq) {
  const auto keys = monomial_support(seq);
  SpanBuilder span(keys.size());
  SpanDimension out;
  const auto deg = static_cast<std::size_t>(seq.base.degree());
  out.bound = binomial_size(seq.base.dim() + deg, seq.base.dim());
  for (std::size_t j = 0; j < seq.polys.size(); ++j) {
    if (span.add(coefficient_vector(seq.polys[j], keys))) out.basis.push_back(j);
    out.rank_so_far.push_back(span.rank());
  }
  out.rank = span.rank();
  return out;
}

std::vector<Rational> dependency_witness(const PullbackSequence& seq, std::size_t j,
                                         const std::vector<std::size_t>& basis) {
  if (j >= seq.polys.size()) throw InputError("dependency_witness: index out of range");
  if (std::find(basis.begin(), basis.end(), j) != basis.end())
    throw InputError("dependency_witness: P_" + std::to_string(j) + " is itself a basis element");
  const auto keys = monomial_support(seq);
  QMatrix a(keys.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] >= seq.polys.size()) throw InputError("dependency_witness: basis index out of range");
    const QVector col = coefficient_vector(seq.polys[basis[i]], keys);
    for (std::size_t r = 0; r < keys.size(); ++r) a(r, i) = col[r];
  }
  const auto c = solve(a, coefficient_vector(seq.polys[j], keys));
  if (!c) {
    throw InputError("dependency_witness: P_" + std::to_string(j) + " is outside the span of the " +
                     std::to_string(basis.size()) + " basis polynomials (basis rank " + std::to_string(rank(a)) + ")");
  }
  MultiPoly check(seq.base.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) check += seq.polys[basis[i]] * (*c)[i];
  if (check != seq.polys[j]) throw std::logic_error("dependency_witness: re-expansion mismatch");
  return *c;
}

DecayReport diameter_decay_report(const PullbackSequence& seq, const PointCloud& zero_samples) {
  if (zero_samples.dim() != seq.base.dim()) throw InputError("decay report: sample dimension mismatch");
  if (zero_samples.empty()) throw InputError("decay report: no samples");
  for (std::size_t i = 0; i < zero_samples.size(); ++i)
    if (std::abs(seq.base.evaluate(zero_samples.point(i))) > 1e-9)
      throw InputError("decay report: sample " + std::to_string(i) + " is not on S(P)");

  const SpanDimension span = coefficient_span_dimension(seq);
  const FloatAffineMap f(seq.map);
  const double norm = operator_norm(seq.map.linear());
  DecayReport rep;
  PointCloud pushed = zero_samples;
  PointCloud all_pushed(zero_samples.dim());
  const double diam0 = diameter(zero_samples);
  double previous = diam0;
  std::vector<double> y(zero_samples.dim());
  for (std::size_t j = 0; j < seq.polys.size(); ++j) {
    if (j > 0) {
      PointCloud next(pushed.dim());
      for (std::size_t i = 0; i < pushed.size(); ++i) {
        f.apply(pushed.point(i), y);
        next.push_back(y);
      }
      pushed = std::move(next);
    }
    DecayRow row;
    row.j = j;
    row.rank_so_far = span.rank_so_far[j];
    row.sampled_diameter = diameter(pushed);
    row.bound = std::pow(norm, static_cast<double>(j)) * diam0 + 1e-9;
    double scale = 1;
    for (const auto& [e, c] : seq.polys[j].terms()) scale += std::abs(to_double(c));
    for (std::size_t i = 0; i < pushed.size(); ++i)
      row.residual = std::max(row.residual, std::abs(seq.polys[j].evaluate(pushed.point(i))) / scale);
    for (std::size_t i = 0; i < pushed.size(); ++i) all_pushed.push_back(pushed.point(i));

    const std::string tag = "j = " + std::to_string(j) + ": ";
    if (row.residual > 1e-9) rep.failures.push_back(tag + "pushed samples are off S(P_j)");
    if (row.sampled_diameter > row.bound) rep.failures.push_back(tag + "sampled diameter exceeds ||M||^j diam");
    if (previous < diam0 && row.sampled_diameter > previous + 1e-12)
      rep.failures.push_back(tag + "sampled diameter increased after dropping below the initial diameter");
    if (row.rank_so_far > span.bound) rep.failures.push_back(tag + "rank exceeds the dimension bound");
    previous = row.sampled_diameter;
    rep.rows.push_back(row);
  }

  // Points on every basis zero set must lie on every S(P_j).
  for (std::size_t i = 0; i < all_pushed.size(); ++i) {
    const auto x = all_pushed.point(i);
    bool on_all = true;
    for (std::size_t b : span.basis) {
      double scale = 1;
      for (const auto& [e, c] : seq.polys[b].terms()) scale += std::abs(to_double(c));
      if (std::abs(seq.polys[b].evaluate(x)) / scale > 1e-9) on_all = false;
    }
    if (!on_all) continue;
    ++rep.intersection_samples;
    for (std::size_t j = 0; j < seq.polys.size(); ++j) {
      double scale = 1;
      for (const auto& [e, c] : seq.polys[j].terms()) scale += std::abs(to_double(c));
      if (std::abs(seq.polys[j].evaluate(x)) / scale > 1e-9)
        rep.failures.push_back("a point on every basis zero set is off S(P_" + std::to_string(j) + ")");
    }
  }
  return rep;
}

namespace {

// Polynomial in s for P(s * dir).
std::vector<double> restrict_to_line(const MultiPoly& p, std::span<const double> dir) {
  std::vector<double> coeffs(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, 0.0);
  for (const auto& [e, c] : p.terms()) {
    double v = to_double(c);
    unsigned total = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      v *= std::pow(dir[i], static_cast<double>(e[i]));
      total += e[i];
    }
    coeffs[total] += v;
  }
  return coeffs;
}

double horner(const std::vector<double>& coeffs, double s) {
  double v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
  return v;
}

}  // namespace

PointCloud circle_zero_samples(std::size_t pairs) {
  PointCloud cloud(2);
  for (std::size_t k = 0; k < pairs; ++k) {
    Rational u(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(pairs)));
    u.canonicalize();
    const Rational den = 1 + u * u;
    const double x = to_double((1 - u * u) / den), y = to_double(2 * u / den);
    cloud.push_back(std::vector<double>{x, y});
    cloud.push_back(std::vector<double>{-x, -y});
  }
  return cloud;
}

PointCloud sample_zero_set(const MultiPoly& p, std::size_t count, std::uint64_t seed, double radius) {
  if (p.degree() < 1) throw InputError("sample_zero_set: P must be non-constant");
  const std::size_t dim = p.dim();
  SplitMix64 rng(seed);
  PointCloud cloud(dim);
  std::vector<double> dir(dim), point(dim);
  constexpr int kGrid = 4096;
  for (std::size_t line = 0; line < count; ++line) {
    if (dim == 1) {
      dir[0] = 1;
    } else if (dim == 2) {
      const double angle = std::numbers::pi * static_cast<double>(line) / static_cast<double>(count);
      dir[0] = std::cos(angle);
      dir[1] = std::sin(angle);
    } else {
      double norm = 0;
      for (auto& d : dir) {
        d = static_cast<double>(rng.next() >> 11) * 0x1.0p-53 * 2 - 1;
        norm += d * d;
      }
      norm = std::sqrt(norm);
      for (auto& d : dir) d /= norm == 0 ? 1 : norm;
    }
    const auto poly = restrict_to_line(p, dir);
    double prev_s = -radius, prev_v = horner(poly, prev_s);
    for (int g = 1; g <= kGrid; ++g) {
      const double s = -radius + 2 * radius * g / kGrid;
      const double v = horner(poly, s);
      double root;
      bool found = false;
      if (prev_v == 0) {
        root = prev_s;
        found = true;
      } else if ((prev_v < 0) != (v < 0) && v != 0) {
        double lo = prev_s, hi = s, flo = prev_v;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(lo)); ++it) {
          const double mid = 0.5 * (lo + hi), fm = horner(poly, mid);
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        root = 0.5 * (lo + hi);
        found = true;
      }
      if (found) {
        for (std::size_t i = 0; i < dim; ++i) point[i] = root * dir[i];
        if (std::abs(p.evaluate(point)) <= 1e-10) cloud.push_back(point);
      }
      prev_s = s;
      prev_v = v;
    }
  }
  return cloud;
}

}  // namespace saffine
