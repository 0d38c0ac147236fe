#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mapeval/error.hpp"

namespace mapeval {

/// Row-major 2D array with value semantics. Pixel (x, y) is stored at
/// index y * width + x.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), pixels_(width * height, fill) {
    check_dimensions();
  }

  Raster(std::size_t width, std::size_t height, std::vector<T> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions();
    if (pixels_.size() != width_ * height_) {
      throw ParameterError("raster pixel count does not match width * height");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  T& operator()(std::size_t x, std::size_t y) noexcept {
    assert(x < width_ && y < height_);
    return pixels_[y * width_ + x];
  }
  const T& operator()(std::size_t x, std::size_t y) const noexcept {
    assert(x < width_ && y < height_);
    return pixels_[y * width_ + x];
  }

  std::span<T> pixels() noexcept { return pixels_; }
  std::span<const T> pixels() const noexcept { return pixels_; }

  bool contains(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept {
    return x >= 0 && y >= 0 && static_cast<std::size_t>(x) < width_ &&
           static_cast<std::size_t>(y) < height_;
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  void check_dimensions() const {
    if (width_ == 0 || height_ == 0) {
      throw ParameterError("raster dimensions must be positive");
    }
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> pixels_;
};

/// Real-valued raster consumed by the filtering and detection kernels.
using IntensityImage = Raster<double>;

/// Boolean raster; nonzero is foreground. Stored as bytes to keep spans cheap.
using BinaryImage = Raster<std::uint8_t>;

/// Transpose: pixel (x, y) of the result is pixel (y, x) of the input.
template <typename T>
Raster<T> transposed(const Raster<T>& in) {
  Raster<T> out(in.height(), in.width());
  for (std::size_t y = 0; y < in.height(); ++y)
    for (std::size_t x = 0; x < in.width(); ++x) out(y, x) = in(x, y);
  return out;
}

/// Rotate 90 degrees counter-clockwise (as displayed with y pointing down).
template <typename T>
Raster<T> rotated90(const Raster<T>& in) {
  Raster<T> out(in.height(), in.width());
  for (std::size_t y = 0; y < in.height(); ++y)
    for (std::size_t x = 0; x < in.width(); ++x) out(y, in.width() - 1 - x) = in(x, y);
  return out;
}

}  // namespace mapeval
