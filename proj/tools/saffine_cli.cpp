// saffine: build, sample, verify and classify self-affine constructions.
//
// Artifacts (IFS JSON, CSV, SVG) go to --output or stdout. Reports go to
// stdout when the artifact has its own file and to stderr otherwise.
// Exit status: 0 all checks pass, 1 a check failed, 2 bad input,
// 3 internal failure. Errors are printed to stderr as one JSON object.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "saffine/saffine.h"

namespace {

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw Failure{code, code == 1 ? "check_failed" : code == 2 ? "input_error" : "internal_error", message};
}

void check(saffine_status st) {
  if (st == SAFFINE_OK || st == SAFFINE_CHECK_FAILED) return;
  fail(st == SAFFINE_INPUT_ERROR ? 2 : 3, saffine_last_error());
}

struct Text {
  char* p = nullptr;
  ~Text() { saffine_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Ifs = Handle<saffine_ifs, saffine_ifs_free>;
using Cloud = Handle<saffine_cloud, saffine_cloud_free>;
using Poly = Handle<saffine_poly, saffine_poly_free>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(2, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_artifact(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(2, "cannot write " + path);
  out << data;
  if (!out) fail(2, "write failed for " + path);
}

void emit_report(const std::string& output, const std::string& report) {
  (output.empty() ? std::cerr : std::cout) << report;
}

saffine_format report_format(const std::string& f) { return f == "csv" ? SAFFINE_FORMAT_CSV : SAFFINE_FORMAT_TEXT; }

int exit_code(saffine_status st) { return st == SAFFINE_CHECK_FAILED ? 1 : 0; }

struct Options {
  unsigned dim = 2;
  std::string c = "0", d = "1", a = "0", b = "1";
  std::string lambda, anchors, maps, poly, t1 = "1";
  std::string input, map_file, germ_file;
  std::string output, format = "text";
  std::size_t points = 100000, burn_in = 100, depth = 0;
  std::size_t samples = 100;
  unsigned order = 0;
  std::uint64_t seed = 1;
  double tolerance = 0;
  std::vector<std::size_t> project{0, 1};
};

int run_build_moment(const Options& o) {
  Ifs ifs;
  Text report, json;
  const saffine_status st =
      saffine_build_moment(o.dim, o.c.c_str(), o.d.c_str(), o.lambda.empty() ? nullptr : o.lambda.c_str(),
                           o.anchors.empty() ? nullptr : o.anchors.c_str(), report_format(o.format), &ifs.p, &report.p);
  check(st);
  check(saffine_ifs_to_json(ifs.p, &json.p));
  write_artifact(o.output, json.str());
  emit_report(o.output, report.str());
  return exit_code(st);
}

int run_paraboloid(const Options& o) {
  if (o.maps.empty()) fail(2, "--maps is required, e.g. --maps 1/2:0,1/2:1/2");
  Ifs ifs;
  Text report, json;
  const saffine_status st = saffine_build_paraboloid(o.dim, o.a.c_str(), o.b.c_str(), o.maps.c_str(),
                                                     report_format(o.format), &ifs.p, &report.p);
  check(st);
  check(saffine_ifs_to_json(ifs.p, &json.p));
  write_artifact(o.output, json.str());
  emit_report(o.output, report.str());
  return exit_code(st);
}

int run_sample(const Options& o, bool render) {
  Ifs ifs;
  check(saffine_ifs_from_json(read_file(o.input).c_str(), &ifs.p));
  Cloud cloud;
  if (o.depth > 0)
    check(saffine_hutchinson(ifs.p, o.depth, &cloud.p));
  else
    check(saffine_chaos_game(ifs.p, o.points + o.burn_in, o.burn_in, o.seed, &cloud.p));
  const std::string format = o.format == "text" ? (render ? "svg" : "csv") : o.format;
  Text out;
  if (format == "svg") {
    if (o.project.size() != 2) fail(2, "--project takes two axes");
    check(saffine_cloud_to_svg(cloud.p, o.project[0], o.project[1], &out.p));
  } else if (format == "csv") {
    check(saffine_cloud_to_csv(cloud.p, &out.p));
  } else {
    fail(2, "--format must be csv or svg here");
  }
  write_artifact(o.output, out.str());
  if (o.tolerance > 0) {
    double residual = 0;
    check(saffine_cloud_meta_residual(ifs.p, cloud.p, &residual));
    const bool ok = residual <= o.tolerance;
    char line[160];
    std::snprintf(line, sizeof line, "[attractor-on-surface] max residual %.3g over %zu points, tolerance %.3g: %s\n",
                  residual, saffine_cloud_size(cloud.p), o.tolerance, ok ? "ok" : "FAILED");
    emit_report(o.output, line);
    return ok ? 0 : 1;
  }
  return 0;
}

int run_verify(const Options& o) {
  Text report;
  const saffine_status st =
      saffine_verify(read_file(o.input).c_str(), o.samples, o.seed, report_format(o.format), &report.p);
  check(st);
  write_artifact(o.output, report.str());
  return exit_code(st);
}

Poly parse_poly(const Options& o, std::size_t dim) {
  if (o.poly.empty()) fail(2, "--poly is required");
  Poly p;
  check(saffine_poly_parse(o.poly.c_str(), dim, &p.p));
  return p;
}

int run_scaling(const Options& o) {
  Ifs map;
  check(saffine_ifs_from_json(read_file(o.map_file).c_str(), &map.p));
  const Poly p = parse_poly(o, saffine_ifs_dim(map.p));
  Text report, constant;
  const saffine_status st = saffine_scaling(p.p, map.p, &report.p, &constant.p);
  check(st);
  write_artifact(o.output, report.str());
  return exit_code(st);
}

int run_classify(const Options& o) {
  Text report, verdict;
  const saffine_status st = saffine_classify(read_file(o.germ_file).c_str(), read_file(o.map_file).c_str(),
                                             o.t1.c_str(), o.order, &report.p, &verdict.p);
  check(st);
  write_artifact(o.output, report.str());
  return exit_code(st);
}

int run_compactness(const Options& o) {
  Ifs map;
  check(saffine_ifs_from_json(read_file(o.map_file).c_str(), &map.p));
  const Poly p = parse_poly(o, saffine_ifs_dim(map.p));
  Text report;
  const std::size_t m = o.depth > 0 ? o.depth : 10;
  const saffine_status st =
      saffine_compactness_demo(p.p, map.p, m, o.samples, o.seed, report_format(o.format), &report.p);
  check(st);
  write_artifact(o.output, report.str());
  return exit_code(st);
}

void print_error(const Failure& f) {
  const nlohmann::json j{{"error", f.kind}, {"message", f.message}, {"exit", f.code}};
  std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact self-affine IFS constructions and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", saffine_version());
  Options o;

  auto add_output = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--output,-o", o.output, "artifact path (default stdout)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  };
  auto positive = CLI::PositiveNumber;

  auto* build = app.add_subcommand("build-moment", "moment-curve IFS JSON and contraction certificate");
  build->add_option("--dim", o.dim, "curve dimension n >= 2")->required()->check(CLI::Range(2u, 64u));
  build->add_option("--c", o.c, "left endpoint (rational)");
  build->add_option("--d", o.d, "right endpoint (rational)");
  build->add_option("--lambda", o.lambda, "contraction ratio (rational, default half the bound)");
  build->add_option("--anchors", o.anchors, "comma-separated anchors t_i (default uniform grid)");
  add_output(build, {"text", "csv", "json"});

  auto* para = app.add_subcommand("paraboloid", "paraboloid IFS JSON and symbolic identity report");
  para->add_option("--dim", o.dim, "ambient dimension n >= 2")->check(CLI::Range(2u, 64u));
  para->add_option("--a", o.a, "base interval left end");
  para->add_option("--b", o.b, "base interval right end");
  para->add_option("--maps", o.maps, "base maps c:d, comma separated")->required();
  add_output(para, {"text", "csv", "json"});

  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "IFS JSON")->required();
    sub->add_option("--points", o.points, "chaos-game points")->check(positive);
    sub->add_option("--burn-in", o.burn_in, "discarded leading iterates");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--depth", o.depth, "deterministic Hutchinson depth instead of the chaos game");
    sub->add_option("--project", o.project, "SVG projection axes i j")->expected(2);
    sub->add_option("--tolerance", o.tolerance, "check the cloud against the curve or surface in meta")
        ->check(positive);
  };
  auto* chaos = app.add_subcommand("chaos", "attractor samples as CSV");
  add_sampling(chaos);
  add_output(chaos, {"text", "csv", "svg"});
  auto* render = app.add_subcommand("render", "attractor samples as SVG");
  add_sampling(render);
  add_output(render, {"text", "csv", "svg"});

  auto* verify = app.add_subcommand("verify", "exact invariance report for an IFS JSON with meta");
  verify->add_option("input", o.input, "IFS JSON")->required();
  verify->add_option("--points", o.samples, "rational samples per map")->check(positive);
  verify->add_option("--seed", o.seed, "random seed");
  add_output(verify, {"text", "csv"});

  auto* scaling = app.add_subcommand("scaling", "certificate for P o f = C P");
  scaling->add_option("--poly", o.poly, "polynomial text")->required();
  scaling->add_option("map", o.map_file, "IFS JSON with one map")->required();
  add_output(scaling, {"text"});

  auto* classify = app.add_subcommand("classify", "classify a curve germ under an affine self-map");
  classify->add_option("germ", o.germ_file, "germ JSON")->required();
  classify->add_option("map", o.map_file, "JSON with matrices M and J")->required();
  classify->add_option("--t1", o.t1, "recentering point (nonzero rational)");
  classify->add_option("--order", o.order, "truncate the germ to this order");
  add_output(classify, {"text"});

  auto* compact = app.add_subcommand("compactness-demo", "pullback rank and zero-set decay table");
  compact->add_option("--poly", o.poly, "polynomial text")->required();
  compact->add_option("map", o.map_file, "IFS JSON with one map")->required();
  compact->add_option("--depth", o.depth, "number of pullbacks m (default 10)");
  compact->add_option("--points", o.samples, "lines through the origin for zero samples")->check(positive);
  compact->add_option("--seed", o.seed, "random seed");
  add_output(compact, {"text", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error({2, "input_error", e.what()});
    return 2;
  }

  try {
    if (*build) return run_build_moment(o);
    if (*para) return run_paraboloid(o);
    if (*chaos) return run_sample(o, false);
    if (*render) return run_sample(o, true);
    if (*verify) return run_verify(o);
    if (*scaling) return run_scaling(o);
    if (*classify) return run_classify(o);
    if (*compact) return run_compactness(o);
  } catch (const Failure& f) {
    print_error(f);
    return f.code;
  } catch (const std::exception& e) {
    print_error({3, "internal_error", e.what()});
    return 3;
  }
  return 2;
}
