// Adapter for locally supplied BIS locational banking statistics extracts.

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "rmtnet/error.hpp"
#include "rmtnet/ingest.hpp"
#include "text_util.hpp"

namespace rmtnet {

namespace {

bool is_suppressed(std::string_view cell) {
  static constexpr std::string_view kMarkers[] = {"",   "NaN", "nan", "NA",
                                                  "..", "-",   ".",   "NULL"};
  return std::find(std::begin(kMarkers), std::end(kMarkers), cell) !=
         std::end(kMarkers);
}

// SDMX exports write quarters as `2008-Q3`; some tools drop the dash.
std::optional<Period> parse_source_period(std::string_view text) {
  if (auto p = Period::parse(text))
    return p;
  if (text.size() == 6 && text[4] == 'Q') {
    std::string dashed(text.substr(0, 4));
    dashed += "-";
    dashed += text.substr(4);
    return Period::parse(dashed);
  }
  return std::nullopt;
}

void set_key(BisMapping &m, std::string_view key, std::string value) {
  if (key == "period")
    m.period_column = std::move(value);
  else if (key == "reporter")
    m.reporter_column = std::move(value);
  else if (key == "counterparty")
    m.counterparty_column = std::move(value);
  else if (key == "value")
    m.value_column = std::move(value);
  else
    throw ConfigError("unknown mapping key '" + std::string(key) + "'");
}

BisMapping mapping_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("mapping JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("mapping JSON must be an object");
  BisMapping m;
  for (const auto &[key, value] : j.items()) {
    if (key == "filters") {
      if (!value.is_object())
        throw ConfigError("mapping 'filters' must be an object");
      for (const auto &[col, allowed] : value.items()) {
        auto &list = m.filters[col];
        if (allowed.is_string())
          list.push_back(allowed.get<std::string>());
        else if (allowed.is_array())
          for (const auto &v : allowed)
            list.push_back(v.get<std::string>());
        else
          throw ConfigError("filter '" + col + "' must be a string or array");
      }
    } else if (value.is_string()) {
      set_key(m, key, value.get<std::string>());
    } else {
      throw ConfigError("mapping key '" + key + "' must be a string");
    }
  }
  return m;
}

} // namespace

BisMapping parse_bis_mapping(std::string_view text) {
  const auto body = detail::trim(text);
  if (!body.empty() && body.front() == '{')
    return mapping_from_json(body);

  BisMapping m;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("mapping line " + std::to_string(line_no) +
                        ": expected key=value");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key.starts_with("filter.")) {
      auto &list = m.filters[std::string(key.substr(7))];
      for (auto v : detail::split(value, '|'))
        list.emplace_back(detail::trim(v));
    } else {
      set_key(m, key, std::string(value));
    }
  }
  return m;
}

BisMapping read_bis_mapping(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bis_mapping(text.str());
}

ConversionResult convert_bis_lbs(const Table &table, const BisMapping &mapping) {
  const auto column = [&](const std::string &name) {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end())
      throw ConfigError("mapping references absent column '" + name + "'");
    return static_cast<std::size_t>(it - table.header.begin());
  };
  const auto period_col = column(mapping.period_column);
  const auto reporter_col = column(mapping.reporter_column);
  const auto counterparty_col = column(mapping.counterparty_column);
  const auto value_col = column(mapping.value_column);
  std::vector<std::pair<std::size_t, const std::vector<std::string> *>> filters;
  for (const auto &[name, allowed] : mapping.filters)
    filters.emplace_back(column(name), &allowed);

  using Key = std::tuple<Period, std::string, std::string>;
  std::map<Key, double> sums;
  ConversionReport report;

  for (const auto &row : table.rows) {
    ++report.rows_read;
    const auto cell = [&](std::size_t c) -> std::string_view {
      return c < row.size() ? detail::trim(row[c]) : std::string_view{};
    };
    const bool selected =
        std::all_of(filters.begin(), filters.end(), [&](const auto &f) {
          const auto v = cell(f.first);
          return std::find(f.second->begin(), f.second->end(), v) !=
                 f.second->end();
        });
    if (!selected) {
      ++report.rows_filtered;
      continue;
    }
    const auto value_text = cell(value_col);
    if (is_suppressed(value_text)) {
      ++report.dropped_missing;
      continue;
    }
    const auto value = detail::parse_double(value_text);
    const auto period = parse_source_period(cell(period_col));
    auto reporter = detail::to_upper(cell(reporter_col));
    auto counterparty = detail::to_upper(cell(counterparty_col));
    if (!value || *value < 0.0 || !period || reporter.empty() ||
        counterparty.empty() || reporter == counterparty) {
      ++report.dropped_invalid;
      continue;
    }
    ++report.rows_kept;
    sums[Key{*period, std::move(reporter), std::move(counterparty)}] += *value;
  }

  if (sums.empty())
    throw DataError("no rows survive filtering (" +
                    std::to_string(report.rows_read) + " read)");

  std::vector<FlowRecord> records;
  records.reserve(sums.size());
  for (auto &[key, amount] : sums)
    records.push_back(FlowRecord{std::get<0>(key), std::get<1>(key),
                                 std::get<2>(key), amount == 0.0 ? 0.0 : amount});
  report.records_out = records.size();
  return {FlowRecordSet(std::move(records)), report};
}

} // namespace rmtnet
