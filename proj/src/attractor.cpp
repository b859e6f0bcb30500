#include "saffine/attractor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "saffine/errors.hpp"
#include "saffine/random.hpp"

namespace saffine {

PointCloud chaos_game(const IteratedFunctionSystem& ifs, std::size_t iterations, std::size_t burn_in,
                      std::uint64_t seed) {
  if (iterations <= burn_in) throw InputError("chaos game needs iterations > burn-in");
  std::vector<FloatAffineMap> maps;
  for (const auto& f : ifs.maps()) maps.emplace_back(f);
  const std::size_t dim = ifs.dim();
  std::vector<double> x = to_doubles(fixed_point(ifs[0])), y(dim);
  SplitMix64 rng(seed);
  PointCloud cloud(dim);
  cloud.reserve(iterations - burn_in);
  for (std::size_t it = 0; it < iterations; ++it) {
    maps[rng.below(maps.size())].apply(x, y);
    std::swap(x, y);
    if (it >= burn_in) cloud.push_back(x);
  }
  return cloud;
}

PointCloud hutchinson_iterate(const IteratedFunctionSystem& ifs, std::size_t depth) {
  const double count = std::pow(static_cast<double>(ifs.size()), static_cast<double>(depth));
  if (count > 1e7) throw InputError("hutchinson_iterate: more than 1e7 points requested");
  std::vector<FloatAffineMap> maps;
  for (const auto& f : ifs.maps()) maps.emplace_back(f);
  const std::size_t dim = ifs.dim();
  PointCloud current(dim);
  current.push_back(to_doubles(fixed_point(ifs[0])));
  std::vector<double> y(dim);
  // f_w(x0) with w = w1...wk is f_w1(f_w2(...)); prepending a letter maps the
  // previous level's points through that letter.
  for (std::size_t level = 0; level < depth; ++level) {
    PointCloud next(dim);
    next.reserve(current.size() * maps.size());
    for (const auto& f : maps)
      for (std::size_t i = 0; i < current.size(); ++i) {
        f.apply(current.point(i), y);
        next.push_back(y);
      }
    current = std::move(next);
  }
  return current;
}

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

DiameterEstimate diameter_bounds(const PointCloud& cloud) {
  if (cloud.empty()) throw InputError("diameter of an empty cloud");
  const std::size_t n = cloud.size(), dim = cloud.dim();
  DiameterEstimate est;
  if (n <= 10000) {
    double best = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, distance(cloud.point(i), cloud.point(j)));
    est.lower = est.upper = best;
    est.exact = true;
    return est;
  }
  std::vector<std::size_t> extremes;
  double box = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (cloud.point(i)[k] < cloud.point(lo)[k]) lo = i;
      if (cloud.point(i)[k] > cloud.point(hi)[k]) hi = i;
    }
    extremes.push_back(lo);
    extremes.push_back(hi);
    const double w = cloud.point(hi)[k] - cloud.point(lo)[k];
    box += w * w;
  }
  double best = 0;
  for (std::size_t a = 0; a < extremes.size(); ++a)
    for (std::size_t b = a + 1; b < extremes.size(); ++b)
      best = std::max(best, distance(cloud.point(extremes[a]), cloud.point(extremes[b])));
  est.lower = best;
  est.upper = std::sqrt(box);
  return est;
}

double diameter(const PointCloud& cloud) { return diameter_bounds(cloud).lower; }

double one_sided_hausdorff(const PointCloud& from, const PointCloud& to) {
  if (from.empty() || to.empty()) throw InputError("one_sided_hausdorff: empty cloud");
  if (from.dim() != to.dim()) throw InputError("one_sided_hausdorff: dimension mismatch");
  const std::size_t dim = to.dim();

  std::size_t axis = 0;
  double widest = -1;
  for (std::size_t k = 0; k < dim; ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < to.size(); ++i) {
      lo = std::min(lo, to.point(i)[k]);
      hi = std::max(hi, to.point(i)[k]);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = k;
    }
  }
  std::vector<std::size_t> order(to.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return to.point(a)[axis] < to.point(b)[axis]; });
  std::vector<double> keys(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) keys[i] = to.point(order[i])[axis];

  double worst = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto p = from.point(i);
    const auto start = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), p[axis]) - keys.begin());
    double best = std::numeric_limits<double>::infinity();
    // Scan outward in both directions; stop once the axis gap alone exceeds
    // the best distance found.
    for (std::size_t j = start; j < keys.size() && keys[j] - p[axis] <= best; ++j)
      best = std::min(best, distance(p, to.point(order[j])));
    for (std::size_t j = start; j-- > 0 && p[axis] - keys[j] <= best;)
      best = std::min(best, distance(p, to.point(order[j])));
    worst = std::max(worst, best);
  }
  return worst;
}

std::string to_csv(const PointCloud& cloud) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

PointCloud parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      std::string field(line.substr(pos, comma - pos));
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || field.find_first_not_of(" \t", static_cast<std::size_t>(end - field.c_str())) != std::string::npos)
        throw InputError("CSV line " + std::to_string(line_no) + ": bad number \"" + field + "\"");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InputError("CSV line " + std::to_string(line_no) + ": inconsistent number of coordinates");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("CSV contains no points");
  PointCloud cloud(rows.front().size());
  for (const auto& r : rows) cloud.push_back(r);
  return cloud;
}

std::string to_svg(const PointCloud& cloud, const SvgOptions& options) {
  if (options.axis_x >= cloud.dim() || options.axis_y >= cloud.dim())
    throw InputError("projection axis out of range for a " + std::to_string(cloud.dim()) + "-dimensional cloud");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    xmin = std::min(xmin, p[options.axis_x]);
    xmax = std::max(xmax, p[options.axis_x]);
    ymin = std::min(ymin, p[options.axis_y]);
    ymax = std::max(ymax, p[options.axis_y]);
  }
  const double span_x = xmax > xmin ? xmax - xmin : 1.0;
  const double span_y = ymax > ymin ? ymax - ymin : 1.0;
  const double margin = 10, inner = options.size - 2 * margin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
     << "\" viewBox=\"0 0 " << options.size << ' ' << options.size << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"black\">\n";
  char buf[96];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    const double x = margin + (p[options.axis_x] - xmin) / span_x * inner;
    const double y = margin + (1 - (p[options.axis_y] - ymin) / span_y) * inner;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.2f\"/>\n", x, y, options.radius);
    os << buf;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace saffine
