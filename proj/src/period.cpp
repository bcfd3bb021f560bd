#include "rmtnet/period.hpp"

#include <cctype>
#include <stdexcept>

namespace rmtnet {

Period::Period(int year, int quarter) : year_(year), quarter_(quarter) {
  if (year < 0 || year > 9999 || quarter < 1 || quarter > 4)
    throw std::invalid_argument("invalid period " + std::to_string(year) +
                                "-Q" + std::to_string(quarter));
}

std::optional<Period> Period::parse(std::string_view text) {
  if (text.size() != 7 || text[4] != '-' || text[5] != 'Q')
    return std::nullopt;
  int year = 0;
  for (int i = 0; i < 4; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      return std::nullopt;
    year = year * 10 + (text[i] - '0');
  }
  const char q = text[6];
  if (q < '1' || q > '4')
    return std::nullopt;
  return Period(year, q - '0');
}

Period Period::next() const noexcept {
  Period p = *this;
  if (++p.quarter_ > 4) {
    p.quarter_ = 1;
    ++p.year_;
  }
  return p;
}

std::string Period::str() const {
  std::string out(7, '0');
  int y = year_;
  for (int i = 3; i >= 0; --i) {
    out[i] = static_cast<char>('0' + y % 10);
    y /= 10;
  }
  out[4] = '-';
  out[5] = 'Q';
  out[6] = static_cast<char>('0' + quarter_);
  return out;
}

} // namespace rmtnet
