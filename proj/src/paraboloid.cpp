#include "saffine/paraboloid.hpp"

#include <algorithm>
#include <cmath>

#include "saffine/errors.hpp"

namespace saffine {

void ParaboloidSpec::validate() const {
  if (dim < 2) throw InputError("paraboloid needs n >= 2");
  if (!(a < b)) throw InputError("paraboloid base interval needs a < b");
  if (base_maps.empty()) throw InputError("paraboloid needs at least one base map");
  std::vector<std::pair<Rational, Rational>> images;
  for (const auto& m : base_maps) {
    if (m.scale == 0 || abs_value(m.scale) >= 1)
      throw InputError("base map scale " + to_string(m.scale) + " must satisfy 0 < |c| < 1");
    Rational lo = m.scale * a + m.shift, hi = m.scale * b + m.shift;
    if (lo > hi) std::swap(lo, hi);
    images.emplace_back(lo, hi);
  }
  std::sort(images.begin(), images.end());
  Rational reach = a;
  bool covered = images.front().first == a;
  for (const auto& [lo, hi] : images) {
    if (lo < a || hi > b || lo > reach) covered = false;
    reach = std::max(reach, hi);
  }
  if (!covered || reach != b)
    throw InputError("base maps do not have [" + to_string(a) + ", " + to_string(b) + "] as their attractor");
}

QVector eval_paraboloid_embedding(const QVector& x) {
  QVector out = x;
  Rational sq = 0;
  for (const auto& v : x) sq += v * v;
  out.push_back(sq);
  return out;
}

MultiPoly paraboloid_polynomial(unsigned n) {
  if (n < 2) throw InputError("paraboloid needs n >= 2");
  MultiPoly p(n);
  for (unsigned j = 0; j + 1 < n; ++j) {
    Exponent e(n, 0);
    e[j] = 2;
    p.add_term(e, 1);
  }
  Exponent last(n, 0);
  last[n - 1] = 1;
  p.add_term(last, -1);
  return p;
}

AffineMap paraboloid_map(unsigned n, const BaseMap& base) {
  if (n < 2) throw InputError("paraboloid needs n >= 2");
  const Rational& c = base.scale;
  const Rational& d = base.shift;
  QMatrix m(n, n);
  QVector shift(n, d);
  for (unsigned j = 0; j + 1 < n; ++j) {
    m(j, j) = c;
    m(n - 1, j) = 2 * c * d;
  }
  m(n - 1, n - 1) = c * c;
  shift[n - 1] = Rational(static_cast<long>(n - 1)) * d * d;
  return {std::move(m), std::move(shift)};
}

IteratedFunctionSystem build_paraboloid_ifs(const ParaboloidSpec& spec) {
  spec.validate();
  std::vector<AffineMap> maps;
  for (const auto& base : spec.base_maps) {
    AffineMap f = paraboloid_map(spec.dim, base);
    if (!check_paraboloid_conjugation(spec.dim, f, base).holds)
      throw InputError("conjugation identity failed for base map (" + to_string(base.scale) + ", " +
                       to_string(base.shift) + ")");
    maps.push_back(std::move(f));
  }
  return IteratedFunctionSystem(std::move(maps));
}

ConjugationIdentity check_paraboloid_conjugation(unsigned n, const AffineMap& f, const BaseMap& base) {
  if (f.dim() != n || n < 2) throw InputError("conjugation check: dimension mismatch");
  const std::size_t m = n - 1;
  // eta as polynomials in the m base variables.
  std::vector<MultiPoly> eta;
  MultiPoly square_sum(m);
  for (std::size_t j = 0; j < m; ++j) {
    eta.push_back(MultiPoly::variable(m, j));
    square_sum += eta.back() * eta.back();
  }
  eta.push_back(square_sum);

  ConjugationIdentity out;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly comp = MultiPoly::constant(m, f.translation()[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (f.linear()(i, j) != 0) comp += eta[j] * f.linear()(i, j);
    out.lhs.push_back(std::move(comp));
  }
  MultiPoly rhs_last(m);
  for (std::size_t j = 0; j < m; ++j) {
    MultiPoly moved = MultiPoly::variable(m, j) * base.scale + MultiPoly::constant(m, base.shift);
    rhs_last += moved * moved;
    out.rhs.push_back(std::move(moved));
  }
  out.rhs.push_back(std::move(rhs_last));
  out.holds = out.lhs == out.rhs;
  return out;
}

double surface_residual(const MultiPoly& p, const PointCloud& cloud) {
  if (p.dim() != cloud.dim()) throw InputError("surface_residual: dimension mismatch");
  double worst = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) worst = std::max(worst, std::abs(p.evaluate(cloud.point(i))));
  return worst;
}

}  // namespace saffine
