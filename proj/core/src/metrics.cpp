#include "mapeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mapeval {

void MetricParams::validate() const {
  const auto& c = corner;
  if (!(c.log_sigma > 0.0)) throw ParameterError("corner.log_sigma must be positive");
  if (c.min_blob_size < 1) throw ParameterError("corner.min_blob_size must be >= 1");
  if (!(c.harris_k > 0.0 && c.harris_k < 0.25)) throw ParameterError("corner.harris_k must lie in (0, 0.25)");
  if (!(c.harris_window_sigma > 0.0)) throw ParameterError("corner.harris_window_sigma must be positive");
  if (!(c.rel_threshold > 0.0 && c.rel_threshold <= 1.0)) {
    throw ParameterError("corner.rel_threshold must lie in (0, 1]");
  }
  if (c.nms_radius < 1) throw ParameterError("corner.nms_radius must be >= 1");
  if (!(c.structure_threshold >= 0.0 && c.structure_threshold <= 1.0)) {
    throw ParameterError("corner.structure_threshold must lie in [0, 1]");
  }
  if (enclosed.u_steps < 1) throw ParameterError("enclosed.u_steps must be >= 1");
}

ProportionResult occupied_proportion(const OccupancyGrid& grid, const ProportionParams& params) {
  ProportionResult result;
  // Neumaier-compensated sum keeps the mean correctly rounded in practice.
  long double sum = 0.0L;
  long double compensation = 0.0L;
  std::size_t known = 0;
  for (const auto& cell : grid.cells()) {
    if (cell.is_unknown()) {
      ++result.unknown_cells;
      continue;
    }
    const long double p = cell.probability();
    const long double t = sum + p;
    compensation += std::fabs(sum) >= std::fabs(p) ? (sum - t) + p : (p - t) + sum;
    sum = t;
    ++known;
  }
  if (known == 0) {
    result.undefined = true;
    return result;
  }
  result.threshold = static_cast<double>((sum + compensation) / static_cast<long double>(known));

  for (const auto& cell : grid.cells()) {
    if (cell.is_unknown()) continue;
    const double p = cell.probability();
    const bool occupied =
        params.tie_rule == TieRule::TiesFree ? p > result.threshold : p >= result.threshold;
    ++(occupied ? result.occupied_cells : result.free_cells);
  }
  result.proportion =
      static_cast<double>(result.occupied_cells) / static_cast<double>(grid.size());
  return result;
}

CornerResult corner_count(const OccupancyGrid& grid, const CornerParams& params) {
  CornerResult result;
  const IntensityImage remapped = to_intensity(grid, CornerRemap{});
  const auto values = remapped.pixels();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    result.degenerate = true;
    return result;
  }

  const IntensityImage log = laplacian_of_gaussian(remapped, params.log_sigma);
  IntensityImage magnitude(log.width(), log.height());
  double peak = 0.0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    magnitude.pixels()[i] = std::abs(log.pixels()[i]);
    peak = std::max(peak, magnitude.pixels()[i]);
  }
  if (!(peak > 0.0)) return result;

  // A zero threshold would select the whole image; fall back to the nonzero support.
  const double mask_level =
      params.structure_threshold > 0.0 ? params.structure_threshold * peak
                                       : std::nextafter(0.0, 1.0);
  const BinaryImage mask = remove_small_components(binarize(magnitude, mask_level),
                                                   params.min_blob_size, Connectivity::Eight);

  IntensityImage response = harris_response(log, params.harris_k, params.harris_window_sigma);
  for (std::size_t i = 0; i < response.size(); ++i) {
    if (!mask.pixels()[i]) response.pixels()[i] = 0.0;
  }
  result.corners = detect_corners(response, params.rel_threshold, params.nms_radius);
  result.count = result.corners.size();
  return result;
}

UnknownRemapCount enclosed_areas_at(const OccupancyGrid& grid, double u,
                                    std::size_t min_hole_area) {
  UnknownRemapCount entry;
  entry.u = u;
  const IntensityImage remapped = to_intensity(grid, EnclosedRemap{u});
  const OtsuResult otsu = otsu_threshold(remapped);
  entry.threshold = otsu.threshold;
  if (otsu.degenerate) {
    entry.degenerate = true;
    return entry;
  }

  // Occupied (and, when above the threshold, unknown) cells form the foreground.
  const BinaryImage walls = binarize(remapped, otsu.threshold);
  const ContourHierarchy hierarchy = trace_contours(walls);

  BinaryImage open(walls.width(), walls.height());
  for (std::size_t i = 0; i < walls.size(); ++i) open.pixels()[i] = walls.pixels()[i] ? 0 : 1;
  const ComponentLabels regions = connected_components(open, Connectivity::Four);

  for (const auto& contour : hierarchy.contours) {
    if (contour.kind != BorderKind::Hole) continue;
    ++entry.holes;
    const Point seed = *contour.hole_seed;
    const std::int32_t label =
        regions.labels(static_cast<std::size_t>(seed.x), static_cast<std::size_t>(seed.y));
    if (label > 0 && regions.sizes[static_cast<std::size_t>(label - 1)] >= min_hole_area) {
      ++entry.count;
    }
  }
  return entry;
}

EnclosedResult enclosed_area_count(const OccupancyGrid& grid, const EnclosedParams& params) {
  if (params.u_steps < 1) throw ParameterError("enclosed.u_steps must be >= 1");
  EnclosedResult result;
  const auto steps = static_cast<double>(params.u_steps);
  for (std::size_t s = 0; s < params.u_steps; ++s) {
    const double u = 1.0 - static_cast<double>(s) / steps;
    result.per_u.push_back(enclosed_areas_at(grid, u, params.min_hole_area));
  }
  for (const auto& entry : result.per_u) {
    if (entry.count > result.max_count) {
      result.max_count = entry.count;
      result.best_u = entry.u;
    }
  }
  if (result.max_count == 0) result.best_u = result.per_u.front().u;
  return result;
}

MetricReport evaluate_map(const OccupancyGrid& grid, const MetricParams& params) {
  params.validate();
  MetricReport report;
  report.params_used = params;

  const ProportionResult proportion = occupied_proportion(grid, params.proportion);
  report.occupied_proportion = proportion.proportion;
  report.proportion_threshold = proportion.threshold;
  report.occupied_cells = proportion.occupied_cells;
  report.free_cells = proportion.free_cells;
  report.unknown_cells = proportion.unknown_cells;
  if (proportion.undefined) {
    report.diagnostics.push_back(
        "occupied_proportion: map has no known cells; proportion reported as 0");
  }

  const CornerResult corners = corner_count(grid, params.corner);
  report.corner_count = corners.count;
  if (corners.degenerate) {
    report.diagnostics.push_back("corner_count: remapped map is constant; no structure to detect");
  }

  const EnclosedResult enclosed = enclosed_area_count(grid, params.enclosed);
  report.enclosed_area_count = enclosed.max_count;
  report.enclosed_best_u = enclosed.best_u;
  report.enclosed_per_u = enclosed.per_u;
  const auto degenerate_steps = static_cast<std::size_t>(
      std::count_if(enclosed.per_u.begin(), enclosed.per_u.end(),
                    [](const UnknownRemapCount& e) { return e.degenerate; }));
  if (degenerate_steps > 0) {
    report.diagnostics.push_back("enclosed_area_count: thresholding degenerate for " +
                                 std::to_string(degenerate_steps) + " of " +
                                 std::to_string(enclosed.per_u.size()) + " unknown-remap values");
  }
  return report;
}

}  // namespace mapeval
