#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mapeval/raster.hpp"

namespace mapeval {

/// State of one occupancy-grid cell: Unknown, or Known with an occupancy
/// probability in [0, 1] (0 = certainly free, 1 = certainly occupied).
class CellState {
 public:
  constexpr CellState() noexcept = default;

  static constexpr CellState unknown() noexcept { return CellState{}; }
  /// Throws ParameterError unless 0 <= p <= 1.
  static CellState known(double p);

  bool is_known() const noexcept { return p_.has_value(); }
  bool is_unknown() const noexcept { return !p_.has_value(); }
  /// Occupancy probability; only meaningful when is_known().
  double probability() const noexcept { return p_.value_or(0.0); }

  friend bool operator==(const CellState&, const CellState&) = default;

 private:
  explicit CellState(double p) noexcept : p_(p) {}
  std::optional<double> p_;
};

class OccupancyGrid {
 public:
  OccupancyGrid(std::size_t width, std::size_t height, CellState fill = CellState::unknown());
  OccupancyGrid(std::size_t width, std::size_t height, std::vector<CellState> cells);

  std::size_t width() const noexcept { return cells_.width(); }
  std::size_t height() const noexcept { return cells_.height(); }
  std::size_t size() const noexcept { return cells_.size(); }

  const CellState& at(std::size_t x, std::size_t y) const noexcept { return cells_(x, y); }
  void set(std::size_t x, std::size_t y, CellState state) noexcept { cells_(x, y) = state; }
  std::span<const CellState> cells() const noexcept { return cells_.pixels(); }

  /// Meters per cell. Carried as metadata; no metric reads it.
  std::optional<double> resolution() const noexcept { return resolution_; }
  void set_resolution(std::optional<double> meters_per_cell) noexcept {
    resolution_ = meters_per_cell;
  }

  OccupancyGrid transposed() const;
  OccupancyGrid rotated90() const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  explicit OccupancyGrid(Raster<CellState> cells) : cells_(std::move(cells)) {}

  Raster<CellState> cells_;
  std::optional<double> resolution_;
};

/// Gray-value encoding of an occupancy grid in a PGM file. A raw value v is
/// Unknown iff v == unknown_gray, otherwise Known(1 - v / maxval): dark
/// pixels are occupied.
struct PgmConvention {
  int unknown_gray = 205;
  /// Maximum gray value used when writing. Parsing uses the file header.
  int maxval = 255;

  /// Throws RangeError if maxval is outside [1, 65535] or unknown_gray
  /// outside [0, maxval].
  void validate() const;
};

OccupancyGrid parse_pgm(std::string_view bytes, const PgmConvention& convention = {});
/// Always emits binary P5. Known probabilities are quantized to the nearest
/// gray level; a level colliding with unknown_gray is moved to the closer
/// neighbouring level so the cell still reads back as Known.
std::string write_pgm(const OccupancyGrid& grid, const PgmConvention& convention = {});

/// File helpers. IO failures throw mapeval::Error naming the path.
OccupancyGrid load_pgm(const std::filesystem::path& path, const PgmConvention& convention = {});
void save_pgm(const std::filesystem::path& path, const OccupancyGrid& grid,
              const PgmConvention& convention = {});

/// Known(p) -> 1 - p, Unknown -> 0: free space is bright, structure dark.
struct CornerRemap {};

/// Known(p) -> p, Unknown -> unknown_value (must lie in [0, 1]).
struct EnclosedRemap {
  double unknown_value = 1.0;
};

using RemapRule = std::variant<CornerRemap, EnclosedRemap>;

IntensityImage to_intensity(const OccupancyGrid& grid, const RemapRule& rule);

}  // namespace mapeval
