#include <algorithm>
#include <cmath>
#include <string>

#include "mapeval/imgproc.hpp"

namespace mapeval {

HistogramBinning::HistogramBinning(double lo, double hi, std::size_t bins)
    : lo_(lo), width_((hi - lo) / static_cast<double>(bins)), bins_(bins) {
  if (bins < 1) throw ParameterError("histogram needs at least one bin");
}

double HistogramBinning::edge(std::size_t k) const noexcept {
  return lo_ + static_cast<double>(k) * width_;
}

std::size_t HistogramBinning::bin_of(double value) const noexcept {
  if (!(width_ > 0.0)) return 0;
  const double pos = std::floor((value - lo_) / width_);
  std::size_t k = pos <= 0.0 ? 0 : std::min(bins_ - 1, static_cast<std::size_t>(pos));
  // Division rounding may land one bin off; settle against the edges so that
  // bin membership and `value >= edge(k)` always agree.
  while (k + 1 < bins_ && edge(k + 1) <= value) ++k;
  while (k > 0 && edge(k) > value) --k;
  return k;
}

namespace {

__extension__ typedef __int128 i128;

/// Between-class variance of a split, up to the constant factor 1 / N^2:
/// (N * s0 - n0 * S)^2 / (n0 * (N - n0)), with bin indices as levels.
struct SplitScore {
  i128 diff = 0;
  i128 denom = 1;
};

bool exact_greater(const SplitScore& a, const SplitScore& b) {
  return a.diff * a.diff * b.denom > b.diff * b.diff * a.denom;
}

bool approx_greater(const SplitScore& a, const SplitScore& b) {
  const auto da = static_cast<long double>(a.diff);
  const auto db = static_cast<long double>(b.diff);
  return da * da / static_cast<long double>(a.denom) > db * db / static_cast<long double>(b.denom);
}

}  // namespace

OtsuResult otsu_threshold(const IntensityImage& img, std::size_t bins) {
  if (bins < 2) throw ParameterError("Otsu threshold needs at least 2 bins, got " + std::to_string(bins));

  const auto values = img.pixels();
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;
  if (!(hi > lo)) return {lo, 0, true};

  const HistogramBinning binning(lo, hi, bins);
  std::vector<std::uint64_t> histogram(bins, 0);
  for (double v : values) ++histogram[binning.bin_of(v)];

  const auto total = static_cast<i128>(values.size());
  i128 total_sum = 0;
  for (std::size_t b = 0; b < bins; ++b) total_sum += static_cast<i128>(b) * histogram[b];

  // Exact rational comparison whenever the cross products fit in 128 bits.
  const long double n = static_cast<long double>(values.size());
  const long double diff_bound = n * n * static_cast<long double>(bins);
  const bool exact = diff_bound * diff_bound * n * n < 1.0e37L;

  std::size_t best_split = 1;
  SplitScore best{};
  bool have_best = false;
  i128 below_count = 0;
  i128 below_sum = 0;
  for (std::size_t k = 1; k < bins; ++k) {
    below_count += histogram[k - 1];
    below_sum += static_cast<i128>(k - 1) * histogram[k - 1];
    // Bin 0 and bin bins-1 are never empty here, so both classes are populated.
    const SplitScore score{total * below_sum - below_count * total_sum,
                           below_count * (total - below_count)};
    const bool better = !have_best || (exact ? exact_greater(score, best) : approx_greater(score, best));
    if (better) {
      best = score;
      best_split = k;
      have_best = true;
    }
  }
  return {binning.edge(best_split), best_split, false};
}

BinaryImage binarize(const IntensityImage& img, double threshold) {
  BinaryImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] >= threshold ? 1 : 0;
  return out;
}

}  // namespace mapeval
