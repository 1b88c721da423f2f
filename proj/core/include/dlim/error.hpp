#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force enumeration would exceed its configured element cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (ordinals, Walker elements, JSON documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed JSON that does not describe the expected object; `path` is a
/// JSON pointer to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, const std::string& path)
      : Error(what + " at " + (path.empty() ? std::string("/") : path)), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace dlim
