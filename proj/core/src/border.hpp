#pragma once

#include <cstddef>
#include <vector>

namespace mapeval::detail {

/// Symmetric reflection of an index into [0, n): ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
/// Valid for any offset, including kernels wider than the image.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

/// Precomputed reflect_index(i + k, n) for i in [0, n), k in [-radius, radius].
class ReflectTable {
 public:
  ReflectTable(std::size_t n, std::ptrdiff_t radius)
      : radius_(radius), stride_(static_cast<std::size_t>(2 * radius + 1)), table_(n * stride_) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::ptrdiff_t k = -radius; k <= radius; ++k)
        table_[i * stride_ + static_cast<std::size_t>(k + radius)] =
            reflect_index(static_cast<std::ptrdiff_t>(i) + k, n);
  }

  std::size_t operator()(std::size_t i, std::ptrdiff_t k) const noexcept {
    return table_[i * stride_ + static_cast<std::size_t>(k + radius_)];
  }

 private:
  std::ptrdiff_t radius_;
  std::size_t stride_;
  std::vector<std::size_t> table_;
};

}  // namespace mapeval::detail
