// Plain-text and CSV reports. Lines asserting an identity carry a bracketed
// tag naming it, e.g. "[moment-invariance]".
#pragma once

#include <optional>
#include <string>

#include "saffine/compactness.hpp"
#include "saffine/curve_classifier.hpp"
#include "saffine/moment_curve.hpp"
#include "saffine/paraboloid.hpp"

namespace saffine {

enum class ReportFormat { Text, Csv };

/// Thrown by parse_report_format.
ReportFormat parse_report_format(const std::string& name);

struct Report {
  std::string body;
  bool ok = true;
};

/// Per-map contraction certificates of a moment IFS plus the tiling check.
Report moment_build_report(const MomentIfsRecipe& recipe, ReportFormat format = ReportFormat::Text);

Report moment_invariance_report(const MomentIfsRecipe& recipe, const InvarianceReport& inv,
                                ReportFormat format = ReportFormat::Text);

/// Symbolic conjugation identity and contraction certificate per map.
Report paraboloid_report(const ParaboloidSpec& spec, const IteratedFunctionSystem& ifs,
                         ReportFormat format = ReportFormat::Text);

Report scaling_report(const MultiPoly& p, const AffineMap& f, const std::optional<ScalingCertificate>& cert);

Report classification_report(const Classification& c);

/// Table j, rank so far, sampled diameter, bound, max residual.
Report compactness_report(const PullbackSequence& seq, const SpanDimension& span, const DecayReport& decay,
                          ReportFormat format = ReportFormat::Text);

}  // namespace saffine
