#include "mapeval/imgproc.hpp"

namespace mapeval {
namespace {

class DisjointSets {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }

  std::int32_t find(std::int32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

// Two-pass labelling: provisional labels with union-find over the causal
// neighbours, then a raster-order relabel so numbering is canonical.
ComponentLabels connected_components(const BinaryImage& img, Connectivity connectivity) {
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  const bool eight = connectivity == Connectivity::Eight;

  Raster<std::int32_t> provisional(img.width(), img.height(), -1);
  DisjointSets sets;

  auto label_at = [&](std::ptrdiff_t x, std::ptrdiff_t y) -> std::int32_t {
    if (x < 0 || y < 0 || x >= w) return -1;
    return provisional(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  };

  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      if (!img(static_cast<std::size_t>(x), static_cast<std::size_t>(y))) continue;
      std::int32_t current = -1;
      auto join = [&](std::int32_t neighbour) {
        if (neighbour < 0) return;
        if (current < 0) {
          current = neighbour;
        } else {
          sets.unite(current, neighbour);
        }
      };
      join(label_at(x - 1, y));
      join(label_at(x, y - 1));
      if (eight) {
        join(label_at(x - 1, y - 1));
        join(label_at(x + 1, y - 1));
      }
      if (current < 0) current = sets.make();
      provisional(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = current;
    }
  }

  ComponentLabels result{Raster<std::int32_t>(img.width(), img.height(), 0), {}};
  std::vector<std::int32_t> final_label;
  auto src = provisional.pixels();
  auto dst = result.labels.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < 0) continue;
    const std::int32_t root = sets.find(src[i]);
    if (static_cast<std::size_t>(root) >= final_label.size()) {
      final_label.resize(static_cast<std::size_t>(root) + 1, 0);
    }
    std::int32_t& label = final_label[static_cast<std::size_t>(root)];
    if (label == 0) {
      result.sizes.push_back(0);
      label = static_cast<std::int32_t>(result.sizes.size());
    }
    dst[i] = label;
    ++result.sizes[static_cast<std::size_t>(label - 1)];
  }
  return result;
}

BinaryImage remove_small_components(const BinaryImage& img, std::size_t min_size,
                                    Connectivity connectivity) {
  if (min_size < 1) throw ParameterError("minimum component size must be >= 1");
  const ComponentLabels components = connected_components(img, connectivity);
  BinaryImage out(img.width(), img.height());
  auto labels = components.labels.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int32_t label = labels[i];
    dst[i] = label > 0 && components.sizes[static_cast<std::size_t>(label - 1)] >= min_size ? 1 : 0;
  }
  return out;
}

}  // namespace mapeval
