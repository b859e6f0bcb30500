// Exact affine maps x -> Mx + a, iterated function systems, and point clouds.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "saffine/linalg.hpp"

namespace saffine {

class AffineMap {
 public:
  /// Throws InputError unless `linear` is square with side translation.size().
  AffineMap(QMatrix linear, QVector translation);

  static AffineMap identity(std::size_t dim);
  /// x -> s*x + shift (shift broadcast to every coordinate).
  static AffineMap uniform_scaling(std::size_t dim, const Rational& s, const Rational& shift = 0);

  std::size_t dim() const { return translation_.size(); }
  const QMatrix& linear() const { return linear_; }
  const QVector& translation() const { return translation_; }

  QVector operator()(const QVector& x) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  QMatrix linear_;
  QVector translation_;
};

/// h = f o g.
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// Throws InputError when the linear part is singular.
AffineMap invert(const AffineMap& f);

/// Solves (I - M) x = a exactly; throws InputError when 1 is an eigenvalue.
QVector fixed_point(const AffineMap& f);

/// f applied j times to x.
QVector iterate(const AffineMap& f, QVector x, std::size_t j);

/// Largest singular value, computed in double precision.
///
/// Power iteration on M^T M (tolerance 1e-14, at most 10 000 steps). When it
/// stalls, the eigenvalues of M^T M are recomputed with cyclic Jacobi sweeps.
double operator_norm(const QMatrix& m);

/// Exact check of sqrt(n) * max_k sum_j |m_kj| < 1, evaluated as
/// n * (max row sum)^2 < 1 so no square root is taken.
bool row_sum_certificate(const QMatrix& m);

/// The exact value sqrt(n) * max row sum, squared.
Rational row_sum_bound_squared(const QMatrix& m);

struct ContractionCertificate {
  enum class Route { Numeric, RowSum, None };

  bool contractive = false;
  Route route = Route::None;
  double spectral_norm = 0;
  bool row_sum_holds = false;
};

std::string to_string(ContractionCertificate::Route route);

/// Contractive iff the spectral norm is below 1 - 1e-12 or the exact
/// row-sum bound is below 1. Numeric route is tried first.
ContractionCertificate is_contractive(const AffineMap& f);

/// Finite list of invertible, strictly contractive maps of one dimension.
class IteratedFunctionSystem {
 public:
  /// Validates all members; throws InputError on the first offender.
  explicit IteratedFunctionSystem(std::vector<AffineMap> maps);

  std::size_t dim() const { return maps_.front().dim(); }
  std::size_t size() const { return maps_.size(); }
  const std::vector<AffineMap>& maps() const { return maps_; }
  const AffineMap& operator[](std::size_t i) const { return maps_[i]; }

 private:
  std::vector<AffineMap> maps_;
};

/// Flat storage of `size()` points of length `dim`.
class PointCloud {
 public:
  explicit PointCloud(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  void push_back(std::span<const double> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coordinates() const { return coords_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Double-precision copy of an affine map for sampling loops.
struct FloatAffineMap {
  explicit FloatAffineMap(const AffineMap& f);

  /// out = M x + a; `out` and `x` must not alias.
  void apply(std::span<const double> x, std::span<double> out) const;

  std::size_t dim;
  std::vector<double> linear;  // row-major
  std::vector<double> translation;
};

}  // namespace saffine
