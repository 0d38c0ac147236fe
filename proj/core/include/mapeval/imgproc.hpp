#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mapeval/raster.hpp"

namespace mapeval {

// All convolutions use symmetric reflection at the image border: the sample
// at index -1 is index 0, -2 is 1, and so on (edge pixel repeated).

/// Normalized 1D Gaussian kernel of radius ceil(3 * sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur; a constant image is returned unchanged. Throws
/// ParameterError if sigma <= 0.
IntensityImage gaussian_smooth(const IntensityImage& img, double sigma);

/// Discrete 5-point Laplacian, kernel [[0,1,0],[1,-4,1],[0,1,0]].
IntensityImage laplacian(const IntensityImage& img);

/// gaussian_smooth followed by laplacian.
IntensityImage laplacian_of_gaussian(const IntensityImage& img, double sigma);

/// Harris response R = det(M) - k * trace(M)^2 per pixel, where M is the
/// structure tensor of central-difference gradients smoothed by a Gaussian
/// window. Requires 0 < k < 0.25 and window_sigma > 0.
IntensityImage harris_response(const IntensityImage& img, double k, double window_sigma);

struct Corner {
  std::size_t x = 0;
  std::size_t y = 0;
  double response = 0.0;

  friend bool operator==(const Corner&, const Corner&) = default;
};

/// Local maxima of a corner response. A pixel is reported when its value is
/// at least rel_threshold * max(response) and strictly greater than every
/// other pixel of its (2 * nms_radius + 1)^2 neighbourhood. Returns an empty
/// list when max(response) <= 0. Output is in raster order.
std::vector<Corner> detect_corners(const IntensityImage& response, double rel_threshold,
                                   std::size_t nms_radius);

struct OtsuResult {
  /// Lower edge of the first bin of the upper class. Binarizing with
  /// `value >= threshold` reproduces the histogram split exactly.
  double threshold = 0.0;
  /// Index of the first bin assigned to the upper class, in [1, bins - 1].
  std::size_t split_bin = 0;
  /// Set when the image is constant; threshold is then that constant.
  bool degenerate = false;
};

/// Histogram position of a value. Bins partition [lo, hi] into `bins` equal
/// intervals; the last bin is closed. Edge k is lo + k * (hi - lo) / bins and
/// a value sits in bin k iff edge(k) <= value < edge(k + 1).
class HistogramBinning {
 public:
  HistogramBinning(double lo, double hi, std::size_t bins);

  double edge(std::size_t k) const noexcept;
  std::size_t bin_of(double value) const noexcept;
  std::size_t bins() const noexcept { return bins_; }

 private:
  double lo_;
  double width_;
  std::size_t bins_;
};

/// Otsu's method over a `bins`-bin histogram spanning [min, max] of the
/// image. Maximizes between-class variance; ties go to the lower split.
/// Requires bins >= 2.
OtsuResult otsu_threshold(const IntensityImage& img, std::size_t bins = 256);

/// Foreground iff value >= threshold.
BinaryImage binarize(const IntensityImage& img, double threshold);

enum class Connectivity { Four = 4, Eight = 8 };

struct ComponentLabels {
  /// 0 for background, otherwise 1-based component label. Labels are
  /// numbered in raster order of each component's first pixel.
  Raster<std::int32_t> labels;
  /// sizes[i] is the pixel count of label i + 1.
  std::vector<std::size_t> sizes;

  std::size_t count() const noexcept { return sizes.size(); }
};

ComponentLabels connected_components(const BinaryImage& img, Connectivity connectivity);

/// Clears every foreground component with fewer than min_size pixels.
BinaryImage remove_small_components(const BinaryImage& img, std::size_t min_size,
                                    Connectivity connectivity);

struct Point {
  std::ptrdiff_t x = 0;
  std::ptrdiff_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class BorderKind { Outer, Hole };

struct Contour {
  BorderKind kind = BorderKind::Outer;
  /// Index of the enclosing border. For a hole border, the outer border of
  /// the component it belongs to; for an outer border, the hole border of
  /// the surrounding component (none at top level).
  std::optional<std::size_t> parent;
  /// Closed 8-connected pixel path; the first point is the starting pixel
  /// and the last point is 8-adjacent to it (or equal, for one pixel).
  std::vector<Point> points;
  /// For hole borders: the background pixel right of the starting pixel,
  /// which lies inside the enclosed region.
  std::optional<Point> hole_seed;
};

struct ContourHierarchy {
  std::vector<Contour> contours;

  std::size_t outer_count() const noexcept;
  std::size_t hole_count() const noexcept;
};

/// Suzuki-Abe topological border following with 8-connected foreground and
/// 4-connected background. Pixels outside the image count as background.
ContourHierarchy trace_contours(const BinaryImage& img);

}  // namespace mapeval
