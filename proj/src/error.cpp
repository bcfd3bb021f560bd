#include "rmtnet/error.hpp"

namespace rmtnet {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Data:
    return 1;
  case ErrorKind::Numerical:
    return 2;
  case ErrorKind::Config:
  case ErrorKind::Io:
    return 3;
  }
  return 3;
}

RowError::RowError(std::size_t row, const std::string &what)
    : DataError("row " + std::to_string(row) + ": " + what), row_(row) {}

} // namespace rmtnet
