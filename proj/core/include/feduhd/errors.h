#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feduhd {

// Problems with input data: unreadable files, malformed rows, datasets that
// cannot be partitioned.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(what + " (line " + std::to_string(line) + ")"),
        message_(what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  // The description without the line suffix.
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

// Schema violation in an experiment config; field() is a JSON-pointer style
// path such as "/dirichlet_alpha".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}

  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace feduhd
