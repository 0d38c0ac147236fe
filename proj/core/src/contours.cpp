#include <cstdlib>

#include "mapeval/imgproc.hpp"

namespace mapeval {
namespace {

// Neighbour directions, clockwise as displayed (rows grow downwards):
// 0 E, 1 SE, 2 S, 3 SW, 4 W, 5 NW, 6 N, 7 NE.
constexpr std::ptrdiff_t kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::ptrdiff_t kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kEast = 0;
constexpr int kWest = 4;

int clockwise(int d) { return (d + 1) & 7; }
int counter_clockwise(int d) { return (d + 7) & 7; }
int opposite(int d) { return (d + 4) & 7; }

/// Zero-framed label image: f(x, y) for x in [0, w + 2), y in [0, h + 2).
class Labels {
 public:
  explicit Labels(const BinaryImage& img)
      : w_(static_cast<std::ptrdiff_t>(img.width()) + 2),
        h_(static_cast<std::ptrdiff_t>(img.height()) + 2),
        data_(static_cast<std::size_t>(w_ * h_), 0) {
    for (std::size_t y = 0; y < img.height(); ++y)
      for (std::size_t x = 0; x < img.width(); ++x)
        if (img(x, y)) at(static_cast<std::ptrdiff_t>(x) + 1, static_cast<std::ptrdiff_t>(y) + 1) = 1;
  }

  std::int32_t& at(std::ptrdiff_t x, std::ptrdiff_t y) {
    return data_[static_cast<std::size_t>(y * w_ + x)];
  }
  std::int32_t at_dir(std::ptrdiff_t x, std::ptrdiff_t y, int d) { return at(x + kDx[d], y + kDy[d]); }

  std::ptrdiff_t width() const { return w_; }
  std::ptrdiff_t height() const { return h_; }

 private:
  std::ptrdiff_t w_;
  std::ptrdiff_t h_;
  std::vector<std::int32_t> data_;
};

struct BorderInfo {
  BorderKind kind;
  std::int32_t parent;  // 0 = none
};

/// Follows the border starting at (x, y), whose known background neighbour
/// lies in direction `start_dir`. Marks pixels with +/-nbd and returns the
/// visited path in unframed coordinates.
std::vector<Point> follow_border(Labels& f, std::ptrdiff_t x, std::ptrdiff_t y, int start_dir,
                                 std::int32_t nbd) {
  std::vector<Point> path{{x - 1, y - 1}};

  // Clockwise search around the start pixel for any foreground neighbour.
  int d1 = start_dir;
  bool found = false;
  for (int n = 0; n < 8; ++n, d1 = clockwise(d1)) {
    if (f.at_dir(x, y, d1) != 0) {
      found = true;
      break;
    }
  }
  if (!found) {
    f.at(x, y) = -nbd;
    return path;
  }
  const std::ptrdiff_t x1 = x + kDx[d1];
  const std::ptrdiff_t y1 = y + kDy[d1];

  std::ptrdiff_t x3 = x;
  std::ptrdiff_t y3 = y;
  int back = d1;  // direction from (x3, y3) to the previous border pixel
  for (;;) {
    int d = back;
    bool east_examined = false;
    for (int n = 0; n < 8; ++n) {
      d = counter_clockwise(d);
      if (f.at_dir(x3, y3, d) != 0) break;
      if (d == kEast) east_examined = true;
    }
    const std::ptrdiff_t x4 = x3 + kDx[d];
    const std::ptrdiff_t y4 = y3 + kDy[d];

    std::int32_t& cell = f.at(x3, y3);
    if (east_examined) {
      cell = -nbd;
    } else if (cell == 1) {
      cell = nbd;
    }

    if (x4 == x && y4 == y && x3 == x1 && y3 == y1) break;
    path.push_back({x4 - 1, y4 - 1});
    back = opposite(d);
    x3 = x4;
    y3 = y4;
  }
  // The loop re-enters the start pixel before detecting closure; drop the
  // duplicate so the path is a simple cycle listing.
  if (path.size() > 1 && path.back() == path.front()) path.pop_back();
  return path;
}

}  // namespace

std::size_t ContourHierarchy::outer_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : contours) n += c.kind == BorderKind::Outer;
  return n;
}

std::size_t ContourHierarchy::hole_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : contours) n += c.kind == BorderKind::Hole;
  return n;
}

ContourHierarchy trace_contours(const BinaryImage& img) {
  Labels f(img);
  // Index 1 is the image frame, which behaves as a hole border.
  std::vector<BorderInfo> borders{{BorderKind::Hole, 0}, {BorderKind::Hole, 0}};
  ContourHierarchy result;
  std::int32_t nbd = 1;

  for (std::ptrdiff_t y = 1; y + 1 < f.height(); ++y) {
    std::int32_t lnbd = 1;
    for (std::ptrdiff_t x = 1; x + 1 < f.width(); ++x) {
      const std::int32_t value = f.at(x, y);
      if (value == 0) continue;

      BorderKind kind{};
      int start_dir = 0;
      bool starts_border = false;
      if (value == 1 && f.at(x - 1, y) == 0) {
        kind = BorderKind::Outer;
        start_dir = kWest;
        starts_border = true;
      } else if (value >= 1 && f.at(x + 1, y) == 0) {
        kind = BorderKind::Hole;
        start_dir = kEast;
        starts_border = true;
        if (value > 1) lnbd = value;
      }

      if (starts_border) {
        ++nbd;
        const BorderInfo& last = borders[static_cast<std::size_t>(lnbd)];
        const bool same_kind = last.kind == kind;
        const std::int32_t parent = same_kind ? last.parent : lnbd;
        borders.push_back({kind, parent});

        Contour contour;
        contour.kind = kind;
        if (parent >= 2) contour.parent = static_cast<std::size_t>(parent - 2);
        if (kind == BorderKind::Hole) contour.hole_seed = Point{x, y - 1};
        contour.points = follow_border(f, x, y, start_dir, nbd);
        result.contours.push_back(std::move(contour));
      }

      const std::int32_t after = f.at(x, y);
      if (after != 1) lnbd = std::abs(after);
    }
  }
  return result;
}

}  // namespace mapeval
