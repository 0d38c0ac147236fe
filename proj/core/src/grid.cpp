#include "mapeval/grid.hpp"

#include <string>

namespace mapeval {

CellState CellState::known(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("occupancy probability must lie in [0, 1], got " + std::to_string(p));
  }
  return CellState{p};
}

OccupancyGrid::OccupancyGrid(std::size_t width, std::size_t height, CellState fill)
    : cells_(width, height, fill) {}

OccupancyGrid::OccupancyGrid(std::size_t width, std::size_t height, std::vector<CellState> cells)
    : cells_(width, height, std::move(cells)) {}

OccupancyGrid OccupancyGrid::transposed() const {
  OccupancyGrid out(mapeval::transposed(cells_));
  out.resolution_ = resolution_;
  return out;
}

OccupancyGrid OccupancyGrid::rotated90() const {
  OccupancyGrid out(mapeval::rotated90(cells_));
  out.resolution_ = resolution_;
  return out;
}

IntensityImage to_intensity(const OccupancyGrid& grid, const RemapRule& rule) {
  IntensityImage out(grid.width(), grid.height());
  auto cells = grid.cells();
  auto pixels = out.pixels();

  if (const auto* enclosed = std::get_if<EnclosedRemap>(&rule)) {
    const double u = enclosed->unknown_value;
    if (!(u >= 0.0 && u <= 1.0)) {
      throw ParameterError("unknown remap value must lie in [0, 1], got " + std::to_string(u));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      pixels[i] = cells[i].is_known() ? cells[i].probability() : u;
    }
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      pixels[i] = cells[i].is_known() ? 1.0 - cells[i].probability() : 0.0;
    }
  }
  return out;
}

}  // namespace mapeval
