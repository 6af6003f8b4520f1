#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdst {

// Base of every library error. Two branches matter to callers:
// ConfigError (bad parameters, CLI exit code 2) and DataError
// (bad inputs or files, CLI exit code 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// File could not be parsed; message carries file, line and column.
class ParseError : public DataError {
 public:
  ParseError(const std::string& origin, std::size_t line, std::size_t column,
             const std::string& what)
      : DataError(origin + ":" + std::to_string(line) + ":" +
                  std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

// A series is shorter than the span (l-1)*d+1 of a shapelet.
class ShapeletTooLong : public DataError {
 public:
  using DataError::DataError;
};

// Series length differs from the length the bank was generated on.
class LengthMismatch : public DataError {
 public:
  using DataError::DataError;
};

class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

// Every feature column is constant; nothing to fit.
class DegenerateData : public DataError {
 public:
  using DataError::DataError;
};

class UnknownClass : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace rdst
