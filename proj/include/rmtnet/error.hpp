#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmtnet {

/// Broad failure category; the CLI maps each one onto a process exit code.
enum class ErrorKind { Data, Numerical, Config, Io };

/// Exit code used by the command line tool for an error of the given kind.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class DataError : public Error {
public:
  explicit DataError(const std::string &what) : Error(ErrorKind::Data, what) {}
};

/// A data error tied to a 1-based input row (the header is row 1).
class RowError : public DataError {
public:
  RowError(std::size_t row, const std::string &what);

  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorKind::Numerical, what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string &what)
      : Error(ErrorKind::Config, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string &what) : Error(ErrorKind::Io, what) {}
};

} // namespace rmtnet
