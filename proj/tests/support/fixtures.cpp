#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace mapeval::fixture {

namespace fs = std::filesystem;

OccupancyGrid RoomMap::build() const {
  OccupancyGrid grid(width, height);
  for (const Room& r : rooms)
    for (std::size_t y = r.y0; y <= r.y1; ++y)
      for (std::size_t x = r.x0; x <= r.x1; ++x) grid.set(x, y, CellState::known(0.0));
  for (const Room& r : rooms) {
    for (std::size_t x = r.x0; x <= r.x1; ++x) {
      grid.set(x, r.y0, CellState::known(1.0));
      grid.set(x, r.y1, CellState::known(1.0));
    }
    for (std::size_t y = r.y0; y <= r.y1; ++y) {
      grid.set(r.x0, y, CellState::known(1.0));
      grid.set(r.x1, y, CellState::known(1.0));
    }
  }
  for (const auto& [x, y] : dots) grid.set(x, y, CellState::known(1.0));
  for (const auto& [x, y] : unknown_cells) grid.set(x, y, CellState::unknown());
  return grid;
}

std::vector<std::pair<std::size_t, std::size_t>> RoomMap::vertices() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Room& r : rooms) {
    for (auto v : {std::pair{r.x0, r.y0}, std::pair{r.x1, r.y0}, std::pair{r.x0, r.y1},
                   std::pair{r.x1, r.y1}}) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

RoomCase random_room_case(std::mt19937_64& rng, std::size_t dots) {
  const std::size_t w = uniform(rng, 24, 60);
  const std::size_t h = uniform(rng, 24, 60);
  const std::size_t x0 = uniform(rng, 2, 10);
  const std::size_t y0 = uniform(rng, 2, 10);
  const std::size_t w2 = uniform(rng, 20, 60);
  const Room first{x0, y0, x0 + w, y0 + h};
  const Room second{x0 + w, y0, x0 + w + w2, y0 + h};

  RoomCase out;
  out.single.width = out.twin.width = second.x1 + 1 + uniform(rng, 2, 10);
  out.single.height = out.twin.height = first.y1 + 1 + uniform(rng, 2, 10);
  out.single.rooms = {first};
  out.twin.rooms = {first, second};

  auto far_apart = [&](std::size_t x, std::size_t y) {
    for (const auto& [a, b] : out.single.dots) {
      const std::size_t dx = a > x ? a - x : x - a;
      const std::size_t dy = b > y ? b - y : y - b;
      if (std::max(dx, dy) < 4) return false;
    }
    return true;
  };
  while (out.single.dots.size() < dots) {
    const std::size_t x = uniform(rng, first.x0 + 6, first.x1 - 6);
    const std::size_t y = uniform(rng, first.y0 + 6, first.y1 - 6);
    if (far_apart(x, y)) out.single.dots.emplace_back(x, y);
  }
  out.twin.dots = out.single.dots;
  return out;
}

BinaryImage random_binary(std::mt19937_64& rng, std::size_t w, std::size_t h, double density) {
  std::bernoulli_distribution on(density);
  BinaryImage img(w, h);
  for (auto& p : img.pixels()) p = on(rng) ? 1 : 0;
  return img;
}

IntensityImage random_intensity(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  IntensityImage img(w, h);
  const std::size_t mode = uniform(rng, 0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> levels(uniform(rng, 2, 6));
  for (double& l : levels) l = unit(rng);
  for (auto& p : img.pixels()) {
    switch (mode) {
      case 0: p = unit(rng); break;
      case 1: p = levels[uniform(rng, 0, levels.size() - 1)]; break;
      case 2: p = static_cast<double>(uniform(rng, 0, 255)) / 255.0; break;
      default: p = std::normal_distribution<double>(0.0, 10.0)(rng); break;
    }
  }
  // Guarantee a non-constant image.
  img.pixels()[0] = -1.0;
  img.pixels()[img.size() - 1] = 2.0;
  return img;
}

OccupancyGrid random_lattice_grid(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  OccupancyGrid grid(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      std::size_t v = uniform(rng, 0, 255);
      // Bias toward the sentinel so Unknown cells are common.
      if (uniform(rng, 0, 4) == 0) v = 205;
      grid.set(x, y, v == 205 ? CellState::unknown() : CellState::known(1.0 - static_cast<double>(v) / 255.0));
    }
  }
  return grid;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("mapeval-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string line_trajectory(std::size_t n, double dx, double dy) {
  std::string out = "# t x y z qx qy qz qw\n";
  char line[160];
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 0.1 * static_cast<double>(i);
    std::snprintf(line, sizeof line, "%.3f %.6f %.6f 0 0 0 0 1\n", t, 0.5 * t + dx, 0.25 * t + dy);
    out += line;
  }
  return out;
}

void write_batch_tree(const fs::path& root, const std::vector<std::string>& algorithms,
                      const std::vector<std::string>& sequences, std::size_t runs,
                      const std::vector<std::string>& with_truth) {
  for (const auto& seq : with_truth) write_text(root / "ground_truth" / (seq + ".txt"), line_trajectory(40, 0, 0));
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      for (std::size_t r = 0; r < runs; ++r) {
        const fs::path dir = root / algorithms[a] / sequences[s] / ("run" + std::to_string(r));
        RoomMap map;
        map.width = 40 + 3 * a + s;
        map.height = 36 + r;
        map.rooms = {{3, 3, 3 + 24 + s, 3 + 24 + r}};
        if (a % 2 == 1) map.rooms.push_back({3 + 24 + s, 3, map.width - 3, 3 + 24 + r});
        write_text(dir / "map.pgm", write_pgm(map.build()));
        write_text(dir / "trajectory.txt",
                   line_trajectory(40, 0.05 * static_cast<double>(a + 1), 0.01 * static_cast<double>(r)));
      }
    }
  }
}

}  // namespace mapeval::fixture
