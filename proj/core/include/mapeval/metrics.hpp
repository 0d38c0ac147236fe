#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mapeval/grid.hpp"
#include "mapeval/imgproc.hpp"

namespace mapeval {

struct CornerParams {
  double log_sigma = 1.5;
  /// Structural-mask components smaller than this many pixels are dropped.
  std::size_t min_blob_size = 8;
  double harris_k = 0.04;
  double harris_window_sigma = 1.0;
  double rel_threshold = 0.01;
  std::size_t nms_radius = 2;
  /// The structural mask keeps pixels with |LoG| >= structure_threshold * max|LoG|.
  double structure_threshold = 0.25;

  friend bool operator==(const CornerParams&, const CornerParams&) = default;
};

struct EnclosedParams {
  /// Unknown cells are remapped to u = 1, 1 - 1/u_steps, ..., 1/u_steps.
  std::size_t u_steps = 16;
  /// Enclosed regions with fewer background pixels are ignored.
  std::size_t min_hole_area = 4;

  friend bool operator==(const EnclosedParams&, const EnclosedParams&) = default;
};

/// How a Known cell whose probability equals the mean threshold is classified.
enum class TieRule {
  /// Occupied iff p > threshold. A uniform map has proportion 0.
  TiesFree,
  /// Free iff p < threshold, so ties count as occupied.
  TiesOccupied,
};

struct ProportionParams {
  TieRule tie_rule = TieRule::TiesFree;

  friend bool operator==(const ProportionParams&, const ProportionParams&) = default;
};

struct MetricParams {
  CornerParams corner;
  EnclosedParams enclosed;
  ProportionParams proportion;

  /// Throws ParameterError for out-of-domain values.
  void validate() const;

  friend bool operator==(const MetricParams&, const MetricParams&) = default;
};

struct ProportionResult {
  double proportion = 0.0;
  /// Mean occupancy probability of the Known cells.
  double threshold = 0.0;
  std::size_t occupied_cells = 0;
  std::size_t free_cells = 0;
  std::size_t unknown_cells = 0;
  /// No Known cells: proportion is reported as 0.
  bool undefined = false;
};

/// Proportion of occupied cells among all cells, with the occupied/free split
/// at the mean probability of the Known cells.
ProportionResult occupied_proportion(const OccupancyGrid& grid,
                                     const ProportionParams& params = {});

struct CornerResult {
  std::size_t count = 0;
  std::vector<Corner> corners;
  /// The remapped map is constant (for example entirely Unknown).
  bool degenerate = false;
};

/// Structural corner count: remap (free bright), Laplacian of Gaussian,
/// structural mask with small blobs removed, Harris on the LoG restricted to
/// the mask, then non-maximum suppression.
CornerResult corner_count(const OccupancyGrid& grid, const CornerParams& params = {});

struct UnknownRemapCount {
  double u = 0.0;
  double threshold = 0.0;
  /// Otsu found a constant image; this u contributes 0.
  bool degenerate = false;
  /// Every hole border found, before the area filter.
  std::size_t holes = 0;
  /// Hole borders enclosing at least min_hole_area pixels.
  std::size_t count = 0;

  friend bool operator==(const UnknownRemapCount&, const UnknownRemapCount&) = default;
};

struct EnclosedResult {
  std::size_t max_count = 0;
  /// Largest u achieving max_count.
  double best_u = 1.0;
  std::vector<UnknownRemapCount> per_u;
};

/// Counts enclosed free regions for one unknown-remap value.
UnknownRemapCount enclosed_areas_at(const OccupancyGrid& grid, double u,
                                    std::size_t min_hole_area);

/// Maximum enclosed-area count over the descending sequence of unknown-remap
/// values.
EnclosedResult enclosed_area_count(const OccupancyGrid& grid, const EnclosedParams& params = {});

struct MetricReport {
  double occupied_proportion = 0.0;
  double proportion_threshold = 0.0;
  std::size_t occupied_cells = 0;
  std::size_t free_cells = 0;
  std::size_t unknown_cells = 0;
  std::size_t corner_count = 0;
  std::size_t enclosed_area_count = 0;
  double enclosed_best_u = 1.0;
  std::vector<UnknownRemapCount> enclosed_per_u;
  MetricParams params_used;
  /// Human-readable notes on degenerate inputs.
  std::vector<std::string> diagnostics;

  std::size_t total_cells() const noexcept { return occupied_cells + free_cells + unknown_cells; }

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Runs all three map metrics. Deterministic for a given grid and params.
MetricReport evaluate_map(const OccupancyGrid& grid, const MetricParams& params = {});

}  // namespace mapeval
