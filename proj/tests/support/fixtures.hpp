#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mapeval/grid.hpp"
#include "mapeval/imgproc.hpp"

namespace mapeval::fixture {

/// Inclusive wall rectangle: walls on x0, x1, y0, y1.
struct Room {
  std::size_t x0, y0, x1, y1;
};

struct RoomMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Room> rooms;
  /// Isolated occupied cells.
  std::vector<std::pair<std::size_t, std::size_t>> dots;
  /// Wall cells overwritten with Unknown after drawing.
  std::vector<std::pair<std::size_t, std::size_t>> unknown_cells;

  /// Occupied 1-px walls, free interiors, Unknown everywhere else.
  OccupancyGrid build() const;
  /// Distinct wall vertices, including T-junctions of shared walls.
  std::vector<std::pair<std::size_t, std::size_t>> vertices() const;
};

/// One room with walls at least 24 cells long, placed 2..10 cells from the
/// border, and a second room sharing its right wall. `dots` isolated cells
/// are placed inside the first room, >= 6 cells from its walls and >= 4
/// cells apart.
struct RoomCase {
  RoomMap single;
  RoomMap twin;
};
RoomCase random_room_case(std::mt19937_64& rng, std::size_t dots);

/// Uniform random binary image with the given foreground density.
BinaryImage random_binary(std::mt19937_64& rng, std::size_t w, std::size_t h, double density);

/// Random intensity image. Values are drawn from a handful of levels or
/// uniformly, chosen per image, so both ties and generic values occur.
IntensityImage random_intensity(std::mt19937_64& rng, std::size_t w, std::size_t h);

/// Random grid whose Known probabilities lie on the maxval lattice of the
/// default PGM convention.
OccupancyGrid random_lattice_grid(std::mt19937_64& rng, std::size_t w, std::size_t h);

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

/// Self-deleting scratch directory.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Writes a TUM log of `n` poses at 10 Hz along a line, offset by
/// (dx, dy).
std::string line_trajectory(std::size_t n, double dx, double dy);

/// Builds `<root>/<alg>/<seq>/<run>/{map.pgm,trajectory.txt}` for every
/// combination, with ground truth for the sequences listed in `with_truth`.
/// Map contents depend on (alg, seq, run) so entries differ.
void write_batch_tree(const std::filesystem::path& root, const std::vector<std::string>& algorithms,
                      const std::vector<std::string>& sequences, std::size_t runs,
                      const std::vector<std::string>& with_truth);

}  // namespace mapeval::fixture
