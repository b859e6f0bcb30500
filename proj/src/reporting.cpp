#include "saffine/reporting.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "saffine/errors.hpp"

namespace saffine {

namespace {

std::string fixed(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string join(const std::vector<Rational>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += to_string(v[i]);
  }
  return out;
}

std::string pass_fail(bool ok) { return ok ? "ok" : "FAILED"; }

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "csv") return ReportFormat::Csv;
  throw InputError("report format must be text or csv, got '" + name + "'");
}

Report moment_build_report(const MomentIfsRecipe& recipe, ReportFormat format) {
  const auto& spec = recipe.spec;
  std::ostringstream os;
  Report rep;
  const bool tiles = anchors_tile_interval(spec, recipe.lambda, recipe.anchors);
  rep.ok = tiles;
  if (format == ReportFormat::Csv) {
    os << "map,anchor,row_sum_bound_squared,spectral_norm,row_sum_certificate,route\n";
  } else {
    os << "moment curve n = " << spec.dim << " on [" << to_string(spec.c) << ", " << to_string(spec.d) << "]\n";
    os << "lambda = " << to_string(recipe.lambda) << " (~" << fixed(to_double(recipe.lambda), 8)
       << "), admissible bound " << to_string(lambda_bound(spec)) << " (~" << fixed(lambda_bound_real(spec), 8)
       << ")\n";
    os << "maps = " << recipe.ifs.size() << "\n";
    os << "[moment-tiling] images of [c, d] cover [c, d]: " << pass_fail(tiles) << "\n";
  }
  double worst = 0;
  for (std::size_t i = 0; i < recipe.ifs.size(); ++i) {
    const auto cert = is_contractive(recipe.ifs[i]);
    const bool rowsum = cert.row_sum_holds;
    rep.ok = rep.ok && rowsum && cert.contractive;
    worst = std::max(worst, cert.spectral_norm);
    const Rational bound2 = row_sum_bound_squared(recipe.ifs[i].linear());
    if (format == ReportFormat::Csv) {
      os << i << ',' << to_string(recipe.anchors[i]) << ',' << to_string(bound2) << ','
         << fixed(cert.spectral_norm) << ',' << (rowsum ? "true" : "false") << ',' << to_string(cert.route) << '\n';
    } else if (!rowsum || !cert.contractive) {
      os << "[moment-contraction] map " << i << " (anchor " << to_string(recipe.anchors[i])
         << "): n * (max row sum)^2 = " << to_string(bound2) << ", spectral norm " << fixed(cert.spectral_norm)
         << ": FAILED\n";
    }
  }
  if (format == ReportFormat::Text) {
    os << "[moment-contraction] row-sum certificate sqrt(n) * max row sum < 1 on every map: " << pass_fail(rep.ok)
       << "\n";
    os << "largest spectral norm " << fixed(worst) << "\n";
    os << (rep.ok ? "certificate: all norms < 1\n" : "certificate: FAILED\n");
  }
  rep.body = os.str();
  return rep;
}

Report moment_invariance_report(const MomentIfsRecipe& recipe, const InvarianceReport& inv, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::Csv) {
    os << "map,t,image,expected\n";
    for (const auto& v : inv.violations)
      os << v.map_index << ',' << to_string(v.t) << ",\"" << join(v.image, " ") << "\",\"" << join(v.expected, " ")
         << "\"\n";
    return {os.str(), inv.ok()};
  }
  os << "[moment-invariance] f_i(eta(t)) = eta(lambda (t - c) + t_i): " << inv.checks << " exact checks over "
     << recipe.ifs.size() << " maps, " << inv.violations.size() << " violations\n";
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < inv.violations.size() && i < kShown; ++i) {
    const auto& v = inv.violations[i];
    os << "  counterexample: map " << v.map_index << ", t = " << to_string(v.t) << "\n"
       << "    f_i(eta(t))            = (" << join(v.image) << ")\n"
       << "    eta(lambda(t-c) + t_i) = (" << join(v.expected) << ")\n";
  }
  if (inv.violations.size() > kShown) os << "  ... " << inv.violations.size() - kShown << " more\n";
  os << (inv.ok() ? "invariance: ok\n" : "invariance: FAILED\n");
  return {os.str(), inv.ok()};
}

Report paraboloid_report(const ParaboloidSpec& spec, const IteratedFunctionSystem& ifs, ReportFormat format) {
  std::ostringstream os;
  Report rep;
  const MultiPoly p = paraboloid_polynomial(spec.dim);
  if (format == ReportFormat::Csv) {
    os << "map,c,d,conjugation_identity,row_sum_certificate,spectral_norm,scaling_constant\n";
  } else {
    os << "paraboloid " << to_string(p) << " = 0, n = " << spec.dim << ", base interval [" << to_string(spec.a)
       << ", " << to_string(spec.b) << "]\n";
    os << "translation entry read as (n-1) d^2 and the last base coordinate as c x_{n-1} + d\n";
  }
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    const auto& base = spec.base_maps[i];
    const auto id = check_paraboloid_conjugation(spec.dim, ifs[i], base);
    const auto cert = is_contractive(ifs[i]);
    const auto constant = scaling_constant(p, ifs[i]);
    rep.ok = rep.ok && id.holds && cert.contractive;
    if (format == ReportFormat::Csv) {
      os << i << ',' << to_string(base.scale) << ',' << to_string(base.shift) << ',' << (id.holds ? "true" : "false")
         << ',' << (cert.row_sum_holds ? "true" : "false") << ',' << fixed(cert.spectral_norm) << ','
         << (constant ? to_string(*constant) : "") << '\n';
      continue;
    }
    os << "map " << i << " (c = " << to_string(base.scale) << ", d = " << to_string(base.shift) << ")\n";
    os << "  [paraboloid-conjugation] f o eta = eta o (c . + d), term by term: " << pass_fail(id.holds) << "\n";
    if (!id.holds) {
      for (std::size_t k = 0; k < id.lhs.size(); ++k)
        if (id.lhs[k] != id.rhs[k])
          os << "    component " << k + 1 << ": " << to_string(id.lhs[k]) << " vs " << to_string(id.rhs[k]) << "\n";
    }
    os << "  contraction: spectral norm " << fixed(cert.spectral_norm) << ", row-sum certificate "
       << (cert.row_sum_holds ? "holds" : "does not hold") << ", route " << to_string(cert.route) << "\n";
    if (constant) os << "  [scaling-factor] P o f = " << to_string(*constant) << " P\n";
  }
  if (format == ReportFormat::Text) os << (rep.ok ? "paraboloid IFS: ok\n" : "paraboloid IFS: FAILED\n");
  rep.body = os.str();
  return rep;
}

Report scaling_report(const MultiPoly& p, const AffineMap& f, const std::optional<ScalingCertificate>& cert) {
  std::ostringstream os;
  os << "P = " << to_string(p) << "\n";
  os << "P o f = " << to_string(compose_affine(p, f)) << "\n";
  if (!cert) {
    os << "[scaling-factor] no C with P o f = C P\n";
    return {os.str(), false};
  }
  os << "[scaling-factor] C = " << to_string(cert->constant) << "\n";
  os << "[scaling-constant-bound] |C| < 1: " << pass_fail(abs_value(cert->constant) < 1) << "\n";
  os << "fixed point (" << join(fixed_point(f)) << "), P there = " << to_string(cert->fixed_point_value) << "\n";
  os << "[fixed-point-on-surface] P(x_f) = 0: " << pass_fail(cert->fixed_point_value == 0) << "\n";
  return {os.str(), true};
}

Report classification_report(const Classification& c) {
  std::ostringstream os;
  for (const auto& line : c.stages) os << line << "\n";
  os << "verdict: " << to_string(c.verdict) << "\n";
  return {os.str(), true};
}

Report compactness_report(const PullbackSequence& seq, const SpanDimension& span, const DecayReport& decay,
                          ReportFormat format) {
  std::ostringstream os;
  Report rep;
  rep.ok = decay.ok() && span.rank <= span.bound;
  if (format == ReportFormat::Csv) {
    os << "j,rank_so_far,sampled_diameter,diameter_bound,max_residual\n";
    for (const auto& r : decay.rows)
      os << r.j << ',' << r.rank_so_far << ',' << fixed(r.sampled_diameter) << ',' << fixed(r.bound) << ','
         << fixed(r.residual) << '\n';
    rep.body = os.str();
    return rep;
  }
  os << "P = " << to_string(seq.base) << ", m = " << seq.polys.size() - 1 << "\n";
  os << "[pullback] P_j = P o f^{-j}\n";
  for (std::size_t j = 0; j < seq.polys.size() && j < 4; ++j)
    os << "  P_" << j << " = " << to_string(seq.polys[j]) << "\n";
  os << "[coefficient-span] rank " << span.rank << " <= C(dim + deg, dim) = " << span.bound << ", basis {";
  for (std::size_t i = 0; i < span.basis.size(); ++i) os << (i ? ", " : "") << span.basis[i];
  os << "}\n";
  for (std::size_t j = 0; j < seq.polys.size(); ++j) {
    if (std::find(span.basis.begin(), span.basis.end(), j) != span.basis.end()) continue;
    const auto w = dependency_witness(seq, j, span.basis);
    os << "[dependency-witness] P_" << j << " =";
    for (std::size_t i = 0; i < w.size(); ++i)
      os << (i ? " + " : " ") << "(" << to_string(w[i]) << ") P_" << span.basis[i];
    os << " (re-expanded exactly)\n";
    break;
  }
  os << "   j  rank  sampled diameter        bound                   max residual\n";
  for (const auto& r : decay.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4zu  %4zu  %-22.17g  %-22.17g  %.3g\n", r.j, r.rank_so_far, r.sampled_diameter,
                  r.bound, r.residual);
    os << buf;
  }
  os << "[zero-set-decay] diam f^j(X) <= ||M||^j diam X and P_j(f^j x) = 0 on samples: " << pass_fail(decay.ok())
     << "\n";
  os << "intersection cross-check: " << decay.intersection_samples << " pushed samples on every basis zero set\n";
  for (const auto& f : decay.failures) os << "  " << f << "\n";
  os << "[compact-surface-obstruction] the conclusion for compact S(P) is cited, not computed: samples bound "
        "sampled diameters only\n";
  rep.body = os.str();
  return rep;
}

}  // namespace saffine
