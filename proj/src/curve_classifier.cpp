#include "saffine/curve_classifier.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "saffine/errors.hpp"

namespace saffine {

VectorSeries normalize_at_fixed_point(const VectorSeries& curve, const QMatrix& j, const QVector& value_at_t0) {
  curve.validate();
  if (!j.is_square() || j.rows() != curve.dim() || value_at_t0.size() != curve.dim())
    throw InputError("normalize: dimension mismatch");
  if (curve.coefficient(0) != value_at_t0) throw InputError("normalize: germ does not pass through the given point");
  const auto j_inv = inverse(j);
  if (!j_inv) throw InputError("normalize: J is singular");
  return apply_affine(*j_inv, scaled(*j_inv * value_at_t0, -1), curve);
}

std::optional<Rational> tangent_eigenvalue(const QMatrix& m, const QVector& tangent) {
  if (!m.is_square() || m.rows() != tangent.size()) throw InputError("tangent_eigenvalue: dimension mismatch");
  if (is_zero(tangent)) throw InputError("tangent_eigenvalue: zero tangent");
  const QVector image = m * tangent;
  std::size_t i = 0;
  while (tangent[i] == 0) ++i;
  const Rational lambda = image[i] / tangent[i];
  if (image != scaled(tangent, lambda)) return std::nullopt;
  return lambda;
}

bool GraphForm::strictly_increasing() const {
  for (std::size_t k = 1; k < exponents.size(); ++k)
    if (exponents[k] <= exponents[k - 1]) return false;
  return true;
}

GraphForm graph_form(const VectorSeries& normalized) {
  normalized.validate();
  const std::size_t n = normalized.dim();
  const unsigned order = normalized.order();
  if (n < 2) throw InputError("graph_form: germ needs at least two coordinates");
  if (!is_zero(normalized.coefficient(0))) throw InputError("graph_form: germ is not centred (nonzero constant term)");
  QVector e1(n);
  e1[0] = 1;
  if (order < 1 || normalized.coefficient(1) != e1) throw InputError("graph_form: tangent is not (1, 0, ..., 0)");

  GraphForm gf;
  gf.parameter = series_reverse(normalized.coords[0]);
  std::vector<Series> graphs;
  SpanBuilder span(order + 1);
  bool independent = true;
  for (std::size_t k = 1; k < n; ++k) {
    graphs.push_back(series_compose(normalized.coords[k], gf.parameter));
    independent = span.add(graphs.back().coefficients()) && independent;
  }
  if (!independent)
    throw HyperplaneDegenerate("coordinates x_2*..x_n* are linearly dependent to order " + std::to_string(order) +
                               "; the germ lies in a hyperplane");

  std::vector<std::size_t> slots(n - 1);
  std::iota(slots.begin(), slots.end(), 0);
  std::stable_sort(slots.begin(), slots.end(),
                   [&](std::size_t a, std::size_t b) { return graphs[a].valuation() < graphs[b].valuation(); });
  gf.coordinate_order.push_back(0);
  for (std::size_t s : slots) {
    const int p = graphs[s].valuation();
    if (p > static_cast<int>(order) - 2)
      throw InsufficientOrder("leading exponent " + std::to_string(p) + " of coordinate " + std::to_string(s + 2) +
                              " needs truncation order >= " + std::to_string(p + 2) + ", have " + std::to_string(order));
    gf.coordinate_order.push_back(s + 1);
    gf.exponents.push_back(static_cast<unsigned>(p));
    gf.leading.push_back(graphs[s][static_cast<std::size_t>(p)]);
    gf.series.push_back(graphs[s]);
  }
  return gf;
}

namespace {

void finish_report(const GraphForm& gf, ConjugationReport& rep) {
  rep.monomial = true;
  for (std::size_t k = 0; k < gf.series.size(); ++k)
    if (gf.series[k] != Series::monomial(gf.order(), gf.exponents[k], gf.leading[k])) rep.monomial = false;
  rep.eigen_relation = !rep.lambdas.empty();
  for (std::size_t k = 0; k < gf.series.size() && rep.eigen_relation; ++k)
    if (rep.lambdas[k + 1] != power(rep.lambdas[0], gf.exponents[k])) rep.eigen_relation = false;
  rep.pass = !rep.mismatch && rep.eigen_relation && rep.monomial;
}

}  // namespace

ConjugationReport check_conjugation(const GraphForm& gf, std::span<const Rational> lambdas) {
  if (lambdas.size() != gf.series.size() + 1) throw InputError("check_conjugation: need one eigenvalue per coordinate");
  if (lambdas[0] == 0) throw InputError("check_conjugation: lambda_1 must be nonzero");
  ConjugationReport rep;
  rep.lambdas.assign(lambdas.begin(), lambdas.end());
  for (std::size_t k = 0; k < gf.series.size() && !rep.mismatch; ++k) {
    const Series lhs = gf.series[k].scale_argument(lambdas[0]);
    const Series rhs = gf.series[k] * lambdas[k + 1];
    for (unsigned m = 0; m <= gf.order(); ++m)
      if (lhs[m] != rhs[m]) {
        rep.mismatch = ConjugationMismatch{k + 1, m, lhs[m], rhs[m]};
        break;
      }
  }
  finish_report(gf, rep);
  return rep;
}

ConjugationReport check_conjugation(const GraphForm& gf, const QMatrix& a) {
  const std::size_t n = gf.series.size() + 1;
  if (!a.is_square() || a.rows() != n) throw InputError("check_conjugation: model matrix has the wrong size");
  if (a.is_diagonal()) {
    QVector diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
    return check_conjugation(gf, diag);
  }
  ConjugationReport rep;
  rep.diagonal_model = false;
  const unsigned order = gf.order();
  std::vector<Series> xi;
  xi.push_back(Series::identity(order));
  for (const auto& s : gf.series) xi.push_back(s);
  std::vector<Series> image;
  for (std::size_t i = 0; i < n; ++i) {
    Series s(order);
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) != 0) s = s + xi[j] * a(i, j);
    image.push_back(std::move(s));
  }
  const Series& y = image[0];
  if (y[0] != 0) throw InputError("check_conjugation: model does not fix the base point");
  for (std::size_t k = 1; k < n && !rep.mismatch; ++k) {
    const Series rhs = series_compose(xi[k], y);
    for (unsigned m = 0; m <= order; ++m)
      if (image[k][m] != rhs[m]) {
        rep.mismatch = ConjugationMismatch{k, m, image[k][m], rhs[m]};
        break;
      }
  }
  // No single eigenvalue per coordinate exists for a non-diagonal model.
  rep.monomial = false;
  rep.eigen_relation = false;
  rep.pass = false;
  return rep;
}

RecenterResult solve_recenter(std::span<const unsigned> exponents, const Rational& t1) {
  if (t1 == 0) throw InputError("solve_recenter: t1 must be nonzero");
  if (exponents.empty() || exponents[0] != 1) throw InputError("solve_recenter: exponent profile must start with p_1 = 1");
  for (std::size_t k = 1; k < exponents.size(); ++k)
    if (exponents[k] <= exponents[k - 1]) throw InputError("solve_recenter: exponents must be strictly increasing");

  const std::size_t n = exponents.size();
  RecenterResult res;
  res.exponents.assign(exponents.begin(), exponents.end());
  // A leading degree d = p_m > 1 would force q_m = p_m / d = 1.
  for (std::size_t k = 1; k < n; ++k) res.rejected_degrees.push_back(exponents[k]);

  const unsigned top = exponents.back();
  QMatrix span(top + 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    span(exponents[j], j) = 1;
    span(0, j) = -power(t1, exponents[j]);
  }
  res.b_prime = QMatrix(n, n);
  res.b_prime(0, 0) = 1;
  for (std::size_t k = 1; k < n; ++k) {
    const unsigned pk = exponents[k];
    QVector rhs(top + 1);
    for (unsigned e = 0; e <= pk; ++e) rhs[e] = binomial(pk, e) * power(-t1, pk - e);
    const auto row = solve(span, rhs);
    if (!row) {
      res.witness_row = k;
      for (unsigned e = 1; e <= pk; ++e)
        if (rhs[e] != 0 && std::find(exponents.begin(), exponents.end(), e) == exponents.end()) {
          res.missing_degree = e;
          break;
        }
      return res;
    }
    for (std::size_t j = 0; j < n; ++j) res.b_prime(k, j) = (*row)[j];
  }
  res.feasible = true;
  res.q = res.exponents;
  return res;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::MomentImage: return "affine image of moment curve, p_k = k";
    case Verdict::ExponentGap: return "p-curve with exponent gap (not moment)";
    case Verdict::ConjugationFails: return "conjugation fails (no diagonal model to order N)";
    case Verdict::HyperplaneDegenerate: return "hyperplane degenerate";
  }
  return "unknown";
}

namespace {

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

Classification classify_curve(const VectorSeries& curve, const QMatrix& m, const QMatrix& j, const Rational& t1) {
  curve.validate();
  const std::size_t n = curve.dim();
  if (!m.is_square() || m.rows() != n || !j.is_square() || j.rows() != n)
    throw InputError("classify: matrices must be " + std::to_string(n) + "x" + std::to_string(n));
  Classification out;

  const QVector tangent = j.column(0);
  const auto lambda = tangent_eigenvalue(m, tangent);
  if (!lambda) throw InputError("classify: first column of J is not an eigenvector of M");
  if (*lambda == 0 || abs_value(*lambda) >= 1)
    throw InputError("classify: tangent eigenvalue " + to_string(*lambda) + " must satisfy 0 < |lambda| < 1");
  out.lambda = *lambda;
  out.stages.push_back("[tangent-eigenvalue] M v = lambda v with lambda = " + to_string(*lambda));

  const VectorSeries normalized = normalize_at_fixed_point(curve, j, curve.coefficient(0));
  out.stages.push_back("[normalize] gamma~ = J^-1 (gamma - gamma(t0)), tangent e1");

  GraphForm gf;
  try {
    gf = graph_form(normalized);
  } catch (const HyperplaneDegenerate& e) {
    out.verdict = Verdict::HyperplaneDegenerate;
    out.stages.push_back(std::string("[graph-form] ") + e.what());
    return out;
  }
  out.exponents.push_back(1);
  out.exponents.insert(out.exponents.end(), gf.exponents.begin(), gf.exponents.end());
  out.stages.push_back("[graph-form] leading exponents p = (" + join(out.exponents) + ")");

  const auto j_inv = inverse(j);
  const QMatrix a_orig = *j_inv * m * j;
  QMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = a_orig(gf.coordinate_order[r], gf.coordinate_order[c]);
  out.conjugation = check_conjugation(gf, a);
  const auto& conj = *out.conjugation;
  if (!conj.pass) {
    out.verdict = Verdict::ConjugationFails;
    std::ostringstream os;
    os << "[conjugation] " << (conj.diagonal_model ? "diagonal" : "non-diagonal") << " model fails";
    if (conj.mismatch)
      os << " at coordinate " << conj.mismatch->slot + 1 << ", coefficient of x^" << conj.mismatch->degree << ": "
         << to_string(conj.mismatch->lhs) << " != " << to_string(conj.mismatch->rhs);
    else if (!conj.eigen_relation)
      os << ": eigenvalues are not powers lambda^p_k";
    else
      os << ": graph is not monomial";
    out.stages.push_back(os.str());
    return out;
  }
  out.stages.push_back("[conjugation] x_k*(lambda x) = lambda^p_k x_k*(x) and x_k* = c_k x^p_k hold to order " +
                       std::to_string(gf.order()));

  out.recenter = solve_recenter(out.exponents, t1);
  if (out.recenter->feasible) {
    out.verdict = Verdict::MomentImage;
    out.stages.push_back("[recenter] every (t - t1)^p_k lies in span{t^p_j - t1^p_j}; p_k = k");
  } else {
    out.verdict = Verdict::ExponentGap;
    out.stages.push_back("[recenter] row " + std::to_string(out.recenter->witness_row + 1) + ": missing monomial t^" +
                         std::to_string(out.recenter->missing_degree));
  }
  return out;
}

VectorSeries germ_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("t0") || !doc.contains("order") || !doc.contains("coords"))
    throw InputError("germ needs \"t0\", \"order\" and \"coords\"");
  if (!doc["order"].is_number_unsigned() || doc["order"].get<unsigned>() < 1)
    throw InputError("germ \"order\" must be a positive integer");
  const unsigned order = doc["order"].get<unsigned>();
  VectorSeries germ;
  germ.t0 = rational_from_json(doc["t0"]);
  if (!doc["coords"].is_array() || doc["coords"].empty()) throw InputError("germ \"coords\" must be a non-empty array");
  for (const auto& c : doc["coords"]) {
    QVector coeffs = vector_from_json(c);
    if (coeffs.size() != order + 1)
      throw InputError("germ coordinate has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                       std::to_string(order + 1));
    germ.coords.emplace_back(std::move(coeffs));
  }
  return germ;
}

Json germ_to_json(const VectorSeries& germ) {
  Json doc = Json::object();
  doc["t0"] = to_string(germ.t0);
  doc["order"] = germ.order();
  Json coords = Json::array();
  for (const auto& s : germ.coords) coords.push_back(to_json(s.coefficients()));
  doc["coords"] = std::move(coords);
  return doc;
}

}  // namespace saffine
