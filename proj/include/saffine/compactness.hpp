// Pullback sequences P_j = P o f^{-j} of a polynomial under a contraction:
// their coefficient span has bounded dimension while their zero sets
// S(P_j) = f^j(S(P)) shrink.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "saffine/polynomial.hpp"

namespace saffine {

struct PullbackSequence {
  MultiPoly base;
  AffineMap map;
  std::vector<MultiPoly> polys;  // polys[j] = P o f^{-j}
};

/// Throws InputError for a constant P or a map that is not invertible and
/// contractive.
PullbackSequence pullback_sequence(const MultiPoly& p, const AffineMap& f, std::size_t m);

struct SpanDimension {
  std::size_t rank = 0;
  std::vector<std::size_t> basis;        // greedy: j is kept iff P_j is new
  std::vector<std::size_t> rank_so_far;  // rank of P_0..P_j
  std::size_t bound = 0;                 // C(dim + deg, dim)
};

SpanDimension coefficient_span_dimension(const PullbackSequence& seq);

/// Coefficients c with P_j = sum_i c_i P_{basis[i]}, checked by re-expansion.
/// Throws InputError when j is in the basis or P_j is outside the span.
std::vector<Rational> dependency_witness(const PullbackSequence& seq, std::size_t j,
                                         const std::vector<std::size_t>& basis);

struct DecayRow {
  std::size_t j = 0;
  std::size_t rank_so_far = 0;
  double sampled_diameter = 0;
  double bound = 0;     // ||M||^j diam(X) + 1e-9
  double residual = 0;  // max |P_j(f^j x)| / (1 + sum |coeff|)
};

struct DecayReport {
  std::vector<DecayRow> rows;
  std::size_t intersection_samples = 0;  // pushed samples lying on every basis zero set
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Pushes the samples through f^j for every j of the sequence and records
/// residuals and sampled diameters. Throws InputError if a sample is off
/// S(P) by more than 1e-9.
DecayReport diameter_decay_report(const PullbackSequence& seq, const PointCloud& zero_samples);

/// Zero-set samples along `count` lines through the origin (evenly spaced
/// angles in 2-D, SplitMix64 directions otherwise), roots located by sign
/// scan on [-radius, radius] and bisection.
/// 2 * pairs points of the unit circle from the rational parametrization
/// u -> ((1 - u^2) / (1 + u^2), 2u / (1 + u^2)), u = k / pairs for k < pairs,
/// each with its antipode. Every coordinate is the double nearest an exact
/// rational point.
PointCloud circle_zero_samples(std::size_t pairs);

PointCloud sample_zero_set(const MultiPoly& p, std::size_t count, std::uint64_t seed, double radius = 16.0);

}  // namespace saffine
