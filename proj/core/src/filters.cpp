#include <cmath>
#include <string>

#include "border.hpp"
#include "mapeval/imgproc.hpp"

namespace mapeval {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("Gaussian sigma must be positive, got " + std::to_string(sigma));
  }
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    const double v = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& v : kernel) v /= sum;
  return kernel;
}

IntensityImage gaussian_smooth(const IntensityImage& img, double sigma) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  const std::size_t w = img.width();
  const std::size_t h = img.height();

  IntensityImage rows(w, h);
  {
    const detail::ReflectTable xs(w, radius);
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        const double center = img(x, y);
        double acc = 0.0;
        for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
          acc += kernel[static_cast<std::size_t>(k + radius)] * (img(xs(x, k), y) - center);
        }
        rows(x, y) = center + acc;
      }
    }
  }

  IntensityImage out(w, h);
  const detail::ReflectTable ys(h, radius);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double center = rows(x, y);
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += kernel[static_cast<std::size_t>(k + radius)] * (rows(x, ys(y, k)) - center);
      }
      out(x, y) = center + acc;
    }
  }
  return out;
}

IntensityImage laplacian(const IntensityImage& img) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const detail::ReflectTable xs(w, 1);
  const detail::ReflectTable ys(h, 1);
  IntensityImage out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      out(x, y) = img(xs(x, -1), y) + img(xs(x, 1), y) + img(x, ys(y, -1)) + img(x, ys(y, 1)) -
                  4.0 * img(x, y);
    }
  }
  return out;
}

IntensityImage laplacian_of_gaussian(const IntensityImage& img, double sigma) {
  return laplacian(gaussian_smooth(img, sigma));
}

}  // namespace mapeval
