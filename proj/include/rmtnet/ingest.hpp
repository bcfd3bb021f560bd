#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rmtnet/period.hpp"

namespace rmtnet {

/// One bilateral claim: `reporter` lent `amount` to `counterparty`.
struct FlowRecord {
  Period period;
  std::string reporter;
  std::string counterparty;
  double amount = 0.0;

  bool operator==(const FlowRecord &) const = default;
};

/// Records in input order plus the sorted period and entity rosters.
class FlowRecordSet {
public:
  FlowRecordSet() = default;

  /// Validates every record (nonnegative finite amount, no self-loop,
  /// nonempty codes) and derives the rosters.
  explicit FlowRecordSet(std::vector<FlowRecord> records);

  const std::vector<FlowRecord> &records() const noexcept { return records_; }
  const std::vector<Period> &periods() const noexcept { return periods_; }
  const std::vector<std::string> &entities() const noexcept {
    return entities_;
  }

  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }
  bool has_period(const Period &p) const;

  /// Sum of all amounts.
  double total_amount() const;

  bool operator==(const FlowRecordSet &) const = default;

private:
  std::vector<FlowRecord> records_;
  std::vector<Period> periods_;
  std::vector<std::string> entities_;
};

/// Parses the `period,reporter,counterparty,amount` format. Accepts LF or
/// CRLF line endings; blank lines are skipped. Errors carry the 1-based row.
FlowRecordSet parse_flow_csv(std::istream &in);
FlowRecordSet parse_flow_csv(std::string_view text);
FlowRecordSet read_flow_csv(const std::string &path);

/// Writes the flow format. Amounts use the shortest round-trip decimal form.
void write_flow_csv(std::ostream &out, const FlowRecordSet &set);
std::string serialize_flow_csv(const FlowRecordSet &set);

/// Header plus string cells, as read from a generic CSV export.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style reader: quoted fields, doubled quotes, CRLF.
Table parse_table_csv(std::istream &in);
Table read_table_csv(const std::string &path);

/// Column mapping for the BIS locational banking statistics adapter.
struct BisMapping {
  std::string period_column = "TIME_PERIOD";
  std::string reporter_column = "L_REP_CTY";
  std::string counterparty_column = "L_CP_COUNTRY";
  std::string value_column = "OBS_VALUE";
  /// Keep a row only if, for every entry, the named column equals one of the
  /// listed values.
  std::map<std::string, std::vector<std::string>> filters;
};

/// Reads a mapping from `key=value` lines or a JSON object.
///
/// Line form: `period=COL`, `reporter=COL`, `counterparty=COL`, `value=COL`,
/// `filter.COL=V1|V2`. `#` starts a comment. JSON form uses the same keys
/// with a nested `"filters": {"COL": "V" | ["V1", "V2"]}` object.
BisMapping parse_bis_mapping(std::string_view text);
BisMapping read_bis_mapping(const std::string &path);

struct ConversionReport {
  std::size_t rows_read = 0;
  std::size_t rows_filtered = 0;   // rejected by a filter predicate
  std::size_t dropped_missing = 0; // empty or suppressed value cell
  std::size_t dropped_invalid = 0; // bad period, negative value, self pair
  std::size_t rows_kept = 0;
  std::size_t records_out = 0; // after summing duplicate keys
};

struct ConversionResult {
  FlowRecordSet records;
  ConversionReport report;
};

/// Converts selected source rows into flow records, summing rows that share
/// a (period, reporter, counterparty) key. Output is sorted by that key.
ConversionResult convert_bis_lbs(const Table &table, const BisMapping &mapping);

struct SyntheticParams {
  int n_core = 6;
  int n_periphery = 25;
  double core_weight_scale = 100.0;
  double periphery_weight_scale = 1.0;
  double link_prob_pp = 0.1;
  std::uint64_t seed = 1;
  Period period{2000, 1};
};

/// One period of a core-periphery network. Core entities are `C01..`,
/// periphery `P01..`. Every core-core and core-periphery ordered pair is
/// linked; periphery pairs are linked with probability `link_prob_pp`.
FlowRecordSet generate_synthetic(const SyntheticParams &params);

struct SyntheticSeriesParams {
  SyntheticParams base;
  int n_periods = 1;
  /// Periphery link probability in the last period; interpolated linearly
  /// from `base.link_prob_pp`.
  double link_prob_pp_end = 0.1;
  /// Multiplicative growth of both weight scales per period.
  double weight_growth = 1.0;
};

/// Consecutive quarters starting at `base.period`, each drawn with a seed
/// derived from `base.seed` and the period index.
FlowRecordSet generate_synthetic_series(const SyntheticSeriesParams &params);

} // namespace rmtnet
