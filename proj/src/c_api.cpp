#include "saffine/saffine.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "saffine/attractor.hpp"
#include "saffine/compactness.hpp"
#include "saffine/curve_classifier.hpp"
#include "saffine/errors.hpp"
#include "saffine/moment_curve.hpp"
#include "saffine/paraboloid.hpp"
#include "saffine/reporting.hpp"

struct saffine_ifs {
  saffine::IteratedFunctionSystem ifs;
  saffine::Json meta;
};

struct saffine_cloud {
  saffine::PointCloud cloud;
};

struct saffine_poly {
  saffine::MultiPoly poly;
};

namespace {

using namespace saffine;

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

template <class F>
saffine_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const InsufficientOrder& e) {
    last_error = e.what();
    return SAFFINE_INPUT_ERROR;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return SAFFINE_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SAFFINE_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SAFFINE_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InputError(std::string(what) + " must not be null");
}

Rational rational_arg(const char* text, const char* name) {
  require(text, name);
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError(std::string("--") + name + ": " + e.what());
  }
}

ReportFormat report_format(saffine_format f) {
  switch (f) {
    case SAFFINE_FORMAT_TEXT: return ReportFormat::Text;
    case SAFFINE_FORMAT_CSV: return ReportFormat::Csv;
  }
  throw InputError("unknown report format");
}

const AffineMap& single_map(const saffine_ifs* map) {
  require(map, "map");
  if (map->ifs.size() != 1)
    throw InputError("expected a document with exactly one map, got " + std::to_string(map->ifs.size()));
  return map->ifs[0];
}

std::vector<BaseMap> parse_base_maps(const std::string& text) {
  std::vector<BaseMap> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw InputError("--maps entries are c:d, got '" + item + "'");
    out.push_back({parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1))});
    pos = comma + 1;
  }
  return out;
}

Json paraboloid_meta(const ParaboloidSpec& spec) {
  Json meta;
  meta["kind"] = "paraboloid";
  meta["n"] = spec.dim;
  meta["a"] = to_json(spec.a);
  meta["b"] = to_json(spec.b);
  Json maps = Json::array();
  for (const auto& m : spec.base_maps) maps.push_back(Json{{"c", to_json(m.scale)}, {"d", to_json(m.shift)}});
  meta["base_maps"] = maps;
  return meta;
}

ParaboloidSpec paraboloid_from_meta(const Json& meta) {
  ParaboloidSpec spec;
  if (!meta.contains("n") || !meta["n"].is_number_unsigned()) throw InputError("meta.n must be a positive integer");
  spec.dim = meta["n"].get<unsigned>();
  spec.a = rational_from_json(meta.at("a"));
  spec.b = rational_from_json(meta.at("b"));
  for (const auto& m : meta.at("base_maps")) spec.base_maps.push_back({rational_from_json(m.at("c")), rational_from_json(m.at("d"))});
  spec.validate();
  return spec;
}

}  // namespace

extern "C" {

const char* saffine_last_error(void) { return last_error.c_str(); }

const char* saffine_version(void) { return "1.0.0"; }

void saffine_string_free(char* s) { std::free(s); }

saffine_status saffine_ifs_from_json(const char* text, saffine_ifs** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    Json meta;
    auto ifs = parse_ifs_json(text, &meta);
    *out = new saffine_ifs{std::move(ifs), std::move(meta)};
    return SAFFINE_OK;
  });
}

saffine_status saffine_ifs_to_json(const saffine_ifs* ifs, char** out) {
  return guarded([&] {
    require(ifs, "ifs");
    require(out, "out");
    *out = dup(ifs_to_json(ifs->ifs, ifs->meta));
    return SAFFINE_OK;
  });
}

size_t saffine_ifs_dim(const saffine_ifs* ifs) { return ifs ? ifs->ifs.dim() : 0; }

size_t saffine_ifs_size(const saffine_ifs* ifs) { return ifs ? ifs->ifs.size() : 0; }

void saffine_ifs_free(saffine_ifs* ifs) { delete ifs; }

saffine_status saffine_build_moment(unsigned n, const char* c, const char* d, const char* lambda, const char* anchors,
                                    saffine_format format, saffine_ifs** out, char** report) {
  return guarded([&] {
    require(out, "out");
    MomentCurveSpec spec{n, rational_arg(c, "c"), rational_arg(d, "d")};
    spec.validate();
    const Rational lam = lambda ? rational_arg(lambda, "lambda") : default_lambda(spec);
    const auto ts = anchors ? parse_rational_list(anchors) : choose_anchors(spec, lam);
    auto recipe = build_moment_ifs(spec, lam, ts);
    const Report rep = moment_build_report(recipe, report_format(format));
    set_string(report, rep.body);
    auto doc = parse_json_text(recipe_to_json(recipe));
    *out = new saffine_ifs{std::move(recipe.ifs), doc["meta"]};
    return rep.ok ? SAFFINE_OK : SAFFINE_CHECK_FAILED;
  });
}

saffine_status saffine_build_paraboloid(unsigned n, const char* a, const char* b, const char* maps,
                                        saffine_format format, saffine_ifs** out, char** report) {
  return guarded([&] {
    require(out, "out");
    require(maps, "maps");
    ParaboloidSpec spec{n, rational_arg(a, "a"), rational_arg(b, "b"), parse_base_maps(maps)};
    auto ifs = build_paraboloid_ifs(spec);
    const Report rep = paraboloid_report(spec, ifs, report_format(format));
    set_string(report, rep.body);
    *out = new saffine_ifs{std::move(ifs), paraboloid_meta(spec)};
    return rep.ok ? SAFFINE_OK : SAFFINE_CHECK_FAILED;
  });
}

saffine_status saffine_verify(const char* json, size_t samples, uint64_t seed, saffine_format format, char** report) {
  return guarded([&] {
    require(json, "json");
    Json meta;
    auto ifs = parse_ifs_json(json, &meta);
    if (!meta.is_object() || !meta.contains("kind") || !meta["kind"].is_string())
      throw InputError("document has no meta.kind describing the construction");
    const std::string kind = meta["kind"].get<std::string>();
    if (kind == "moment") {
      const auto recipe = recipe_from_parts(std::move(ifs), meta);
      const auto pts = sample_interval(recipe.spec.c, recipe.spec.d, samples, seed);
      const auto inv = verify_moment_invariance(recipe, pts);
      Report rep = moment_invariance_report(recipe, inv, report_format(format));
      if (format == SAFFINE_FORMAT_TEXT) {
        const Report cert = moment_build_report(recipe);
        rep.body = cert.body + rep.body;
        rep.ok = rep.ok && cert.ok;
      }
      set_string(report, rep.body);
      return rep.ok ? SAFFINE_OK : SAFFINE_CHECK_FAILED;
    }
    if (kind == "paraboloid") {
      const auto spec = paraboloid_from_meta(meta);
      if (spec.dim != ifs.dim() || spec.base_maps.size() != ifs.size())
        throw InputError("meta does not match the stored maps");
      const Report rep = paraboloid_report(spec, ifs, report_format(format));
      set_string(report, rep.body);
      return rep.ok ? SAFFINE_OK : SAFFINE_CHECK_FAILED;
    }
    throw InputError("unknown meta.kind '" + kind + "'");
  });
}

saffine_status saffine_chaos_game(const saffine_ifs* ifs, size_t iterations, size_t burn_in, uint64_t seed,
                                  saffine_cloud** out) {
  return guarded([&] {
    require(ifs, "ifs");
    require(out, "out");
    *out = new saffine_cloud{chaos_game(ifs->ifs, iterations, burn_in, seed)};
    return SAFFINE_OK;
  });
}

saffine_status saffine_hutchinson(const saffine_ifs* ifs, size_t depth, saffine_cloud** out) {
  return guarded([&] {
    require(ifs, "ifs");
    require(out, "out");
    *out = new saffine_cloud{hutchinson_iterate(ifs->ifs, depth)};
    return SAFFINE_OK;
  });
}

size_t saffine_cloud_size(const saffine_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }

size_t saffine_cloud_dim(const saffine_cloud* cloud) { return cloud ? cloud->cloud.dim() : 0; }

const double* saffine_cloud_data(const saffine_cloud* cloud) {
  return cloud ? cloud->cloud.coordinates().data() : nullptr;
}

saffine_status saffine_cloud_to_csv(const saffine_cloud* cloud, char** out) {
  return guarded([&] {
    require(cloud, "cloud");
    require(out, "out");
    *out = dup(to_csv(cloud->cloud));
    return SAFFINE_OK;
  });
}

saffine_status saffine_cloud_to_svg(const saffine_cloud* cloud, size_t axis_x, size_t axis_y, char** out) {
  return guarded([&] {
    require(cloud, "cloud");
    require(out, "out");
    if (axis_x >= cloud->cloud.dim() || axis_y >= cloud->cloud.dim())
      throw InputError("projection axes must be below the dimension " + std::to_string(cloud->cloud.dim()));
    SvgOptions opt;
    opt.axis_x = axis_x;
    opt.axis_y = axis_y;
    *out = dup(to_svg(cloud->cloud, opt));
    return SAFFINE_OK;
  });
}

double saffine_cloud_graph_residual(const saffine_cloud* cloud) {
  if (!cloud) return NAN;
  double worst = 0;
  for (std::size_t i = 0; i < cloud->cloud.size(); ++i) {
    const auto p = cloud->cloud.point(i);
    double power = p[0];
    for (std::size_t k = 1; k < p.size(); ++k) {
      power *= p[0];
      worst = std::max(worst, std::abs(p[k] - power));
    }
  }
  return worst;
}

saffine_status saffine_cloud_meta_residual(const saffine_ifs* ifs, const saffine_cloud* cloud, double* out) {
  return guarded([&] {
    require(ifs, "ifs");
    require(cloud, "cloud");
    require(out, "out");
    const std::string kind = ifs->meta.is_object() && ifs->meta.contains("kind") && ifs->meta["kind"].is_string()
                                 ? ifs->meta["kind"].get<std::string>()
                                 : "";
    if (cloud->cloud.dim() != ifs->ifs.dim()) throw InputError("cloud and IFS dimensions differ");
    if (kind == "moment") {
      *out = saffine_cloud_graph_residual(cloud);
    } else if (kind == "paraboloid") {
      *out = surface_residual(paraboloid_polynomial(static_cast<unsigned>(ifs->ifs.dim())), cloud->cloud);
    } else {
      throw InputError("IFS meta names no curve or surface to measure against");
    }
    return SAFFINE_OK;
  });
}

void saffine_cloud_free(saffine_cloud* cloud) { delete cloud; }

saffine_status saffine_poly_parse(const char* text, size_t dim, saffine_poly** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new saffine_poly{parse_polynomial(text, dim)};
    return SAFFINE_OK;
  });
}

saffine_status saffine_poly_to_string(const saffine_poly* p, char** out) {
  return guarded([&] {
    require(p, "poly");
    require(out, "out");
    *out = dup(to_string(p->poly));
    return SAFFINE_OK;
  });
}

saffine_status saffine_poly_residual(const saffine_poly* p, const saffine_cloud* cloud, double* out) {
  return guarded([&] {
    require(p, "poly");
    require(cloud, "cloud");
    require(out, "out");
    if (p->poly.dim() != cloud->cloud.dim()) throw InputError("polynomial and cloud dimensions differ");
    *out = surface_residual(p->poly, cloud->cloud);
    return SAFFINE_OK;
  });
}

void saffine_poly_free(saffine_poly* p) { delete p; }

saffine_status saffine_scaling(const saffine_poly* p, const saffine_ifs* map, char** report, char** constant) {
  return guarded([&] {
    require(p, "poly");
    const AffineMap& f = single_map(map);
    if (p->poly.dim() != f.dim())
      throw InputError("polynomial has " + std::to_string(p->poly.dim()) + " variables but the map has dimension " +
                       std::to_string(f.dim()));
    const auto cert = certify_scaling_factor(p->poly, f);
    const Report rep = scaling_report(p->poly, f, cert);
    set_string(report, rep.body);
    if (cert) set_string(constant, to_string(cert->constant));
    return rep.ok ? SAFFINE_OK : SAFFINE_CHECK_FAILED;
  });
}

saffine_status saffine_classify(const char* germ_json, const char* map_json, const char* t1, unsigned order,
                                char** report, char** verdict) {
  return guarded([&] {
    require(germ_json, "germ");
    require(map_json, "map");
    VectorSeries germ = germ_from_json(parse_json_text(germ_json));
    if (order > germ.order())
      throw InputError("--order " + std::to_string(order) + " exceeds the germ's order " +
                       std::to_string(germ.order()));
    if (order > 0)
      for (auto& s : germ.coords) s = s.truncated(order);
    const Json maps = parse_json_text(map_json);
    if (!maps.is_object() || !maps.contains("M") || !maps.contains("J"))
      throw InputError("map document needs \"M\" and \"J\" matrices");
    const QMatrix m = matrix_from_json(maps["M"]);
    const QMatrix j = matrix_from_json(maps["J"]);
    const Classification c = classify_curve(germ, m, j, t1 ? rational_arg(t1, "t1") : Rational(1));
    set_string(report, classification_report(c).body);
    set_string(verdict, to_string(c.verdict));
    return SAFFINE_OK;
  });
}

saffine_status saffine_compactness_demo(const saffine_poly* p, const saffine_ifs* map, size_t m, size_t samples,
                                        uint64_t seed, saffine_format format, char** report) {
  return guarded([&] {
    require(p, "poly");
    const AffineMap& f = single_map(map);
    if (samples == 0) throw InputError("sample count must be positive");
    const auto seq = pullback_sequence(p->poly, f, m);
    const PointCloud zeros = sample_zero_set(p->poly, samples, seed);
    if (zeros.empty()) throw InputError("no real zeros found near the origin to sample");
    const auto span = coefficient_span_dimension(seq);
    const auto decay = diameter_decay_report(seq, zeros);
    const Report rep = compactness_report(seq, span, decay, report_format(format));
    set_string(report, rep.body);
    return rep.ok ? SAFFINE_OK : SAFFINE_CHECK_FAILED;
  });
}

}  // extern "C"
