#include "mapeval/error.hpp"

namespace mapeval {

FormatError::FormatError(const std::string& what, std::size_t offset, const std::string& source)
    : Error((source.empty() ? "" : source + ": ") + what + " (at byte offset " +
            std::to_string(offset) + ")"),
      offset_(offset),
      message_(what) {}

ParseError::ParseError(const std::string& what, std::size_t line, const std::string& source)
    : Error((source.empty() ? "line " + std::to_string(line) : source + ":" + std::to_string(line)) +
            ": " + what),
      line_(line),
      message_(what) {}

}  // namespace mapeval
