#include <algorithm>
#include <string>

#include "border.hpp"
#include "mapeval/imgproc.hpp"

namespace mapeval {

IntensityImage harris_response(const IntensityImage& img, double k, double window_sigma) {
  if (!(k > 0.0 && k < 0.25)) {
    throw ParameterError("Harris k must lie in (0, 0.25), got " + std::to_string(k));
  }
  if (!(window_sigma > 0.0)) {
    throw ParameterError("Harris window sigma must be positive, got " + std::to_string(window_sigma));
  }

  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const detail::ReflectTable xs(w, 1);
  const detail::ReflectTable ys(h, 1);

  IntensityImage ixx(w, h);
  IntensityImage iyy(w, h);
  IntensityImage ixy(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double gx = 0.5 * (img(xs(x, 1), y) - img(xs(x, -1), y));
      const double gy = 0.5 * (img(x, ys(y, 1)) - img(x, ys(y, -1)));
      ixx(x, y) = gx * gx;
      iyy(x, y) = gy * gy;
      ixy(x, y) = gx * gy;
    }
  }

  const IntensityImage a = gaussian_smooth(ixx, window_sigma);
  const IntensityImage b = gaussian_smooth(iyy, window_sigma);
  const IntensityImage c = gaussian_smooth(ixy, window_sigma);

  IntensityImage out(w, h);
  auto r = out.pixels();
  auto pa = a.pixels();
  auto pb = b.pixels();
  auto pc = c.pixels();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double trace = pa[i] + pb[i];
    r[i] = pa[i] * pb[i] - pc[i] * pc[i] - k * trace * trace;
  }
  return out;
}

std::vector<Corner> detect_corners(const IntensityImage& response, double rel_threshold,
                                   std::size_t nms_radius) {
  if (!(rel_threshold > 0.0 && rel_threshold <= 1.0)) {
    throw ParameterError("relative corner threshold must lie in (0, 1], got " +
                         std::to_string(rel_threshold));
  }
  if (nms_radius < 1) throw ParameterError("non-maximum suppression radius must be >= 1");

  const auto values = response.pixels();
  const double peak = *std::max_element(values.begin(), values.end());
  std::vector<Corner> corners;
  if (!(peak > 0.0)) return corners;
  const double floor = rel_threshold * peak;

  const auto w = static_cast<std::ptrdiff_t>(response.width());
  const auto h = static_cast<std::ptrdiff_t>(response.height());
  const auto r = static_cast<std::ptrdiff_t>(nms_radius);
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      const double v = response(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      if (!(v >= floor)) continue;
      bool strict_max = true;
      for (std::ptrdiff_t yy = std::max<std::ptrdiff_t>(0, y - r);
           strict_max && yy <= std::min(h - 1, y + r); ++yy) {
        for (std::ptrdiff_t xx = std::max<std::ptrdiff_t>(0, x - r); xx <= std::min(w - 1, x + r);
             ++xx) {
          if ((xx != x || yy != y) &&
              response(static_cast<std::size_t>(xx), static_cast<std::size_t>(yy)) >= v) {
            strict_max = false;
            break;
          }
        }
      }
      if (strict_max) {
        corners.push_back({static_cast<std::size_t>(x), static_cast<std::size_t>(y), v});
      }
    }
  }
  return corners;
}

}  // namespace mapeval
