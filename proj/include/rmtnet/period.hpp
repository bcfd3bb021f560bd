#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace rmtnet {

/// Calendar quarter, written as `YYYY-Qn`.
class Period {
public:
  Period() = default;
  Period(int year, int quarter);

  /// Strict parse of `^[0-9]{4}-Q[1-4]$`.
  static std::optional<Period> parse(std::string_view text);

  int year() const noexcept { return year_; }
  int quarter() const noexcept { return quarter_; }

  /// The following quarter.
  Period next() const noexcept;

  std::string str() const;

  auto operator<=>(const Period &) const = default;

private:
  int year_ = 2000;
  int quarter_ = 1;
};

} // namespace rmtnet
