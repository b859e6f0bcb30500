// Classification of analytic curve germs that are mapped into themselves by
// an affine map fixing a point of the curve.
//
// Pipeline on exact truncated series:
//   normalize   gamma~(t) = J^{-1} (gamma(t) - gamma(t0)), tangent -> e1
//   graph form  x_k*(x) = gamma~_k(t(x)) with t(.) the inverse of gamma~_1
//   conjugation x_k*(lambda x) = lambda_k x_k*(x) for A = J^{-1} M J diagonal
//   recentering (t - t1)^{p_k} in span{t^{p_j} - t1^{p_j}}
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "saffine/ifs_json.hpp"
#include "saffine/series.hpp"

namespace saffine {

constexpr unsigned kDefaultSeriesOrder = 16;

/// gamma~ = J^{-1}(gamma - value_at_t0). Throws InputError when J is singular
/// or the germ's constant coefficients differ from value_at_t0.
VectorSeries normalize_at_fixed_point(const VectorSeries& curve, const QMatrix& j, const QVector& value_at_t0);

/// lambda with M v = lambda v, or nullopt. Throws InputError for v = 0.
std::optional<Rational> tangent_eigenvalue(const QMatrix& m, const QVector& tangent);

/// Graph of a normalized germ over its first coordinate.
///
/// Slots 1..n-1 hold the remaining coordinates sorted by leading exponent
/// (stable); `coordinate_order[slot]` is the original coordinate index.
/// Exponents are non-decreasing, and strictly increasing for every germ that
/// passes the conjugation check.
struct GraphForm {
  std::vector<std::size_t> coordinate_order;
  std::vector<unsigned> exponents;   // p_2..p_n
  std::vector<Rational> leading;     // c_2..c_n
  std::vector<Series> series;        // x_2*..x_n* as series in x_1*
  Series parameter{0};               // t - t0 as a series in x_1*

  unsigned order() const { return parameter.order(); }
  bool strictly_increasing() const;
};

/// Throws InputError unless the germ has zero constant term and tangent e1,
/// HyperplaneDegenerate when x_2*..x_n* are linearly dependent to the working
/// order, and InsufficientOrder when some exponent exceeds order - 2.
GraphForm graph_form(const VectorSeries& normalized);

struct ConjugationMismatch {
  std::size_t slot = 0;   // graph slot (1-based coordinate within the graph)
  unsigned degree = 0;    // power of x_1*
  Rational lhs;
  Rational rhs;
};

struct ConjugationReport {
  bool pass = false;
  bool diagonal_model = true;
  std::vector<Rational> lambdas;          // diagonal of A (graph slots)
  std::optional<ConjugationMismatch> mismatch;
  bool eigen_relation = false;            // lambda_k == lambda_1^{p_k} for all k
  bool monomial = false;                  // x_k* == c_k x^{p_k} to the working order
};

/// Diagonal model: x_k*(lambda_1 x) == lambda_k x_k*(x) coefficient by
/// coefficient. `lambdas` is indexed by graph slot. Throws for lambda_1 = 0
/// or a length mismatch.
ConjugationReport check_conjugation(const GraphForm& gf, std::span<const Rational> lambdas);

/// General model A (graph-slot coordinates): A xi(x) == (Y, x_2*(Y), ...,
/// x_n*(Y)) with Y the first component of A xi(x). Reduces to the diagonal
/// check when A is diagonal; fails for Jordan and rotation blocks.
ConjugationReport check_conjugation(const GraphForm& gf, const QMatrix& a);

struct RecenterResult {
  bool feasible = false;
  std::vector<unsigned> exponents;       // p, with p_1 = 1
  std::vector<unsigned> q;               // equal to p when feasible
  std::vector<unsigned> rejected_degrees;  // leading degrees d != 1 ruled out
  QMatrix b_prime;                        // rows solved so far
  std::size_t witness_row = 0;           // first k (0-based) that fails
  unsigned missing_degree = 0;           // a monomial t^e with no column support
};

/// Throws InputError for t1 = 0, p_1 != 1, or non-increasing exponents.
RecenterResult solve_recenter(std::span<const unsigned> exponents, const Rational& t1);

enum class Verdict { MomentImage, ExponentGap, ConjugationFails, HyperplaneDegenerate };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::HyperplaneDegenerate;
  Rational lambda;
  std::vector<unsigned> exponents;  // p with p_1 = 1 (empty if degenerate)
  std::optional<ConjugationReport> conjugation;
  std::optional<RecenterResult> recenter;
  std::vector<std::string> stages;  // human-readable log, one line per stage
};

/// Runs the whole pipeline. `curve` is the germ at t0 (which is mapped to the
/// fixed point), `m` the linear part of the self-map, `j` a basis whose first
/// column is the tangent gamma'(t0). Throws InputError when that column is not
/// an eigenvector of M with 0 < |lambda| < 1, and InsufficientOrder as
/// graph_form does.
Classification classify_curve(const VectorSeries& curve, const QMatrix& m, const QMatrix& j, const Rational& t1);

/// {"t0": "p/q", "order": N, "coords": [[c_0, ..., c_N], ...]}.
VectorSeries germ_from_json(const Json& doc);
Json germ_to_json(const VectorSeries& germ);

}  // namespace saffine
