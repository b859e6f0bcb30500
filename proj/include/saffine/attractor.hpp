// Numerical attractor sampling and point-cloud distances (double precision).
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "saffine/affine.hpp"

namespace saffine {

/// Random-orbit sampling. Starts at the fixed point of maps[0], applies a
/// uniformly chosen map (SplitMix64 seeded by `seed`) `iterations` times and
/// returns the last iterations - burn_in points.
/// Throws InputError unless iterations > burn_in.
PointCloud chaos_game(const IteratedFunctionSystem& ifs, std::size_t iterations, std::size_t burn_in,
                      std::uint64_t seed);

/// { f_w(x0) : |w| = depth } with x0 the fixed point of maps[0], in
/// lexicographic word order. Refuses more than 1e7 points.
PointCloud hutchinson_iterate(const IteratedFunctionSystem& ifs, std::size_t depth);

struct DiameterEstimate {
  double lower = 0;
  double upper = 0;
  bool exact = false;
};

/// Exact pairwise scan up to 1e4 points. Larger clouds get a sandwich: the
/// lower bound is the largest distance among axis-extreme points, the upper
/// bound the bounding-box diagonal (upper <= sqrt(dim) * lower).
DiameterEstimate diameter_bounds(const PointCloud& cloud);

/// diameter_bounds(cloud).lower. Throws InputError on an empty cloud.
double diameter(const PointCloud& cloud);

/// sup over `from` of the distance to the nearest point of `to`. Exact; `to`
/// is sorted along its widest axis so most candidates are pruned.
double one_sided_hausdorff(const PointCloud& from, const PointCloud& to);

/// One point per line, 17 significant digits, comma separated, no header.
std::string to_csv(const PointCloud& cloud);
PointCloud parse_csv(std::string_view text);

struct SvgOptions {
  std::size_t axis_x = 0;
  std::size_t axis_y = 1;
  int size = 800;
  double radius = 0.6;
};

/// Scatter plot of the projection onto (axis_x, axis_y).
std::string to_svg(const PointCloud& cloud, const SvgOptions& options = {});

}  // namespace saffine
