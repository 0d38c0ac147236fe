#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mapeval/grid.hpp"

namespace mapeval {
namespace {

bool is_pnm_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Cursor over the raw bytes of a PNM file.
class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  /// Skips whitespace and `#` comments (which run to the end of the line).
  void skip_space_and_comments() {
    while (!at_end()) {
      const char c = bytes_[pos_];
      if (is_pnm_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  /// Reads an unsigned decimal token. Running out of input is a header
  /// format error, or a truncation error inside the raster.
  std::uint64_t read_uint(const char* what, bool in_raster) {
    skip_space_and_comments();
    if (at_end()) {
      if (in_raster) throw TruncationError(std::string("PGM raster truncated while reading ") + what);
      throw FormatError(std::string("unexpected end of header while reading ") + what, pos_);
    }
    if (!is_digit(bytes_[pos_])) {
      throw FormatError(std::string("expected decimal ") + what, pos_);
    }
    std::uint64_t value = 0;
    while (!at_end() && is_digit(bytes_[pos_])) {
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFull) throw RangeError(std::string(what) + " is too large");
      ++pos_;
    }
    if (!at_end() && !is_pnm_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw FormatError(std::string("malformed ") + what, pos_);
    }
    return value;
  }

  unsigned char byte_at(std::size_t i) const { return static_cast<unsigned char>(bytes_[i]); }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

CellState decode(std::uint32_t raw, std::uint32_t maxval, int unknown_gray) {
  if (raw == static_cast<std::uint32_t>(unknown_gray)) return CellState::unknown();
  return CellState::known(1.0 - static_cast<double>(raw) / static_cast<double>(maxval));
}

std::uint32_t encode(const CellState& cell, const PgmConvention& conv) {
  if (cell.is_unknown()) return static_cast<std::uint32_t>(conv.unknown_gray);
  const double exact = conv.maxval * (1.0 - cell.probability());
  long level = std::lround(exact);
  if (level == conv.unknown_gray) {
    const bool go_down = exact < conv.unknown_gray ? level > 0 : level == conv.maxval;
    level += go_down ? -1 : 1;
  }
  return static_cast<std::uint32_t>(level);
}

}  // namespace

void PgmConvention::validate() const {
  if (maxval < 1 || maxval > 65535) {
    throw RangeError("PGM maxval must lie in [1, 65535], got " + std::to_string(maxval));
  }
  if (unknown_gray < 0 || unknown_gray > maxval) {
    throw RangeError("unknown gray value " + std::to_string(unknown_gray) +
                     " lies outside [0, " + std::to_string(maxval) + "]");
  }
}

OccupancyGrid parse_pgm(std::string_view bytes, const PgmConvention& convention) {
  if (bytes.size() < 2) {
    throw FormatError("file too short to hold a PGM magic number", 0);
  }
  bool binary = false;
  if (bytes[0] == 'P' && bytes[1] == '5') {
    binary = true;
  } else if (!(bytes[0] == 'P' && bytes[1] == '2')) {
    throw FormatError("not a grayscale PGM file (expected magic P2 or P5)", 0);
  }

  Reader in(bytes);
  in.advance(2);
  if (in.at_end() || !(is_pnm_space(bytes[2]) || bytes[2] == '#')) {
    throw FormatError("missing whitespace after magic number", 2);
  }

  const std::size_t width_at = in.offset();
  const auto width = in.read_uint("width", false);
  const auto height = in.read_uint("height", false);
  if (width == 0 || height == 0) {
    throw FormatError("PGM dimensions must be positive", width_at);
  }
  const auto maxval = in.read_uint("maxval", false);
  if (maxval < 1 || maxval > 65535) {
    throw RangeError("PGM maxval must lie in [1, 65535], got " + std::to_string(maxval));
  }

  PgmConvention effective = convention;
  effective.maxval = static_cast<int>(maxval);
  effective.validate();

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<CellState> cells;
  cells.reserve(count);
  const auto max32 = static_cast<std::uint32_t>(maxval);

  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (in.at_end()) throw TruncationError("PGM raster missing after header");
    in.advance(1);
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    if (in.remaining() < count * sample_bytes) {
      throw TruncationError("PGM raster truncated: expected " + std::to_string(count * sample_bytes) +
                            " bytes, found " + std::to_string(in.remaining()));
    }
    std::size_t at = in.offset();
    for (std::size_t i = 0; i < count; ++i, at += sample_bytes) {
      std::uint32_t raw = in.byte_at(at);
      if (sample_bytes == 2) raw = (raw << 8) | in.byte_at(at + 1);
      if (raw > max32) {
        throw RangeError("PGM sample " + std::to_string(raw) + " exceeds maxval at byte offset " +
                         std::to_string(at));
      }
      cells.push_back(decode(raw, max32, effective.unknown_gray));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto raw = in.read_uint("sample", true);
      if (raw > maxval) {
        throw RangeError("PGM sample " + std::to_string(raw) + " exceeds maxval at byte offset " +
                         std::to_string(in.offset()));
      }
      cells.push_back(decode(static_cast<std::uint32_t>(raw), max32, effective.unknown_gray));
    }
  }

  return OccupancyGrid(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                       std::move(cells));
}

std::string write_pgm(const OccupancyGrid& grid, const PgmConvention& convention) {
  convention.validate();
  std::string out = "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) +
                    "\n" + std::to_string(convention.maxval) + "\n";
  const bool wide = convention.maxval > 255;
  out.reserve(out.size() + grid.size() * (wide ? 2 : 1));
  for (const auto& cell : grid.cells()) {
    const std::uint32_t level = encode(cell, convention);
    if (wide) out.push_back(static_cast<char>((level >> 8) & 0xFF));
    out.push_back(static_cast<char>(level & 0xFF));
  }
  return out;
}

OccupancyGrid load_pgm(const std::filesystem::path& path, const PgmConvention& convention) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open map file '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) throw Error("failed reading map file '" + path.string() + "'");
  try {
    return parse_pgm(bytes, convention);
  } catch (const FormatError& e) {
    throw FormatError(e.message(), e.offset(), path.string());
  } catch (const TruncationError& e) {
    throw TruncationError(path.string() + ": " + e.what());
  } catch (const RangeError& e) {
    throw RangeError(path.string() + ": " + e.what());
  }
}

void save_pgm(const std::filesystem::path& path, const OccupancyGrid& grid,
              const PgmConvention& convention) {
  const std::string bytes = write_pgm(grid, convention);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace mapeval
