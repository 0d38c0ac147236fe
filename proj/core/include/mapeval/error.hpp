#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mapeval {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file content. `offset()` is the byte offset where parsing stopped.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset, const std::string& source = {});
  std::size_t offset() const noexcept { return offset_; }
  /// The description without source or offset decoration.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

/// File content ended before the declared payload was complete.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A header field or value lies outside its permitted range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied parameter violates its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, const std::string& source = {});
  std::size_t line() const noexcept { return line_; }
  /// The description without source or line decoration.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Trajectory association produced no pose pairs.
class AssociationError : public Error {
 public:
  using Error::Error;
};

/// Duplicate keys or otherwise inconsistent aggregation input.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace mapeval
