#include "saffine/affine.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "saffine/errors.hpp"

namespace saffine {

AffineMap::AffineMap(QMatrix linear, QVector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (translation_.empty()) throw InputError("affine map of dimension 0");
  if (!linear_.is_square()) throw InputError("linear part is not square");
  if (linear_.rows() != translation_.size())
    throw InputError("linear part is " + std::to_string(linear_.rows()) + "x" + std::to_string(linear_.cols()) +
                     " but translation has length " + std::to_string(translation_.size()));
}

AffineMap AffineMap::identity(std::size_t dim) { return {QMatrix::identity(dim), QVector(dim)}; }

AffineMap AffineMap::uniform_scaling(std::size_t dim, const Rational& s, const Rational& shift) {
  QMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = s;
  return {std::move(m), QVector(dim, shift)};
}

QVector AffineMap::operator()(const QVector& x) const { return add(linear_ * x, translation_); }

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  if (f.dim() != g.dim()) throw InputError("compose: dimension mismatch");
  return {f.linear() * g.linear(), add(f.linear() * g.translation(), f.translation())};
}

AffineMap invert(const AffineMap& f) {
  auto inv = inverse(f.linear());
  if (!inv) throw InputError("invert: linear part is singular");
  QVector t = scaled(*inv * f.translation(), -1);
  return {std::move(*inv), std::move(t)};
}

QVector fixed_point(const AffineMap& f) {
  auto x = inverse(QMatrix::identity(f.dim()) - f.linear());
  if (!x) throw InputError("fixed_point: I - M is singular");
  return *x * f.translation();
}

QVector iterate(const AffineMap& f, QVector x, std::size_t j) {
  if (x.size() != f.dim()) throw InputError("iterate: dimension mismatch");
  for (std::size_t k = 0; k < j; ++k) x = f(x);
  return x;
}

namespace {

using Dense = std::vector<double>;

Dense gram(const QMatrix& m) {
  const std::size_t r = m.rows(), n = m.cols();
  Dense a(r * n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = to_double(m(i, j));
  Dense g(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < r; ++k) s += a[k * n + i] * a[k * n + j];
      g[i * n + j] = s;
    }
  return g;
}

// Largest eigenvalue of a symmetric PSD matrix by cyclic Jacobi rotations.
double jacobi_max_eigenvalue(Dense a, std::size_t n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-300) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
  }
  double best = 0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, a[i * n + i]);
  return best;
}

}  // namespace

double operator_norm(const QMatrix& m) {
  const std::size_t n = m.cols();
  if (n == 0) return 0;
  const Dense g = gram(m);

  // Deterministic start vector with no zero component.
  Dense v(n);
  double frac = 0.5;
  for (std::size_t i = 0; i < n; ++i) {
    frac = std::fmod(frac + 0.6180339887498949, 1.0);
    v[i] = 0.5 + frac;
  }
  double mu = 0;
  Dense w(n);
  for (int it = 0; it < 10000; ++it) {
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += g[i * n + j] * v[j];
      w[i] = s;
      norm += s * s;
    }
    norm = std::sqrt(norm);
    if (norm == 0) return 0;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (std::abs(norm - mu) <= 1e-14 * norm) {
      // Accept only a genuine eigenpair; otherwise fall through to Jacobi.
      double resid = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) s += g[i * n + j] * v[j];
        resid += (s - norm * v[i]) * (s - norm * v[i]);
      }
      if (std::sqrt(resid) <= 1e-12 * norm) return std::sqrt(norm);
      break;
    }
    mu = norm;
  }
  return std::sqrt(jacobi_max_eigenvalue(g, n));
}

Rational row_sum_bound_squared(const QMatrix& m) {
  Rational best = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += abs_value(m(r, c));
    if (s > best) best = s;
  }
  return Rational(static_cast<unsigned long>(m.rows())) * best * best;
}

bool row_sum_certificate(const QMatrix& m) { return row_sum_bound_squared(m) < 1; }

std::string to_string(ContractionCertificate::Route route) {
  switch (route) {
    case ContractionCertificate::Route::Numeric: return "spectral-norm";
    case ContractionCertificate::Route::RowSum: return "row-sum";
    case ContractionCertificate::Route::None: return "none";
  }
  return "none";
}

ContractionCertificate is_contractive(const AffineMap& f) {
  ContractionCertificate cert;
  cert.spectral_norm = operator_norm(f.linear());
  cert.row_sum_holds = row_sum_certificate(f.linear());
  if (cert.spectral_norm < 1 - 1e-12) {
    cert.contractive = true;
    cert.route = ContractionCertificate::Route::Numeric;
  } else if (cert.row_sum_holds) {
    cert.contractive = true;
    cert.route = ContractionCertificate::Route::RowSum;
  }
  return cert;
}

IteratedFunctionSystem::IteratedFunctionSystem(std::vector<AffineMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw InputError("an IFS needs at least one map");
  const std::size_t dim = maps_.front().dim();
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const auto& f = maps_[i];
    const std::string tag = "map " + std::to_string(i) + ": ";
    if (f.dim() != dim) throw InputError(tag + "dimension differs from map 0");
    if (determinant(f.linear()) == 0) throw InputError(tag + "linear part is singular");
    if (!is_contractive(f).contractive) throw InputError(tag + "not strictly contractive");
  }
}

void PointCloud::push_back(std::span<const double> p) {
  if (p.size() != dim_) throw InputError("point cloud: point has wrong dimension");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

FloatAffineMap::FloatAffineMap(const AffineMap& f)
    : dim(f.dim()), linear(dim * dim), translation(to_doubles(f.translation())) {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) linear[i * dim + j] = to_double(f.linear()(i, j));
}

void FloatAffineMap::apply(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < dim; ++i) {
    double s = translation[i];
    for (std::size_t j = 0; j < dim; ++j) s += linear[i * dim + j] * x[j];
    out[i] = s;
  }
}

}  // namespace saffine
