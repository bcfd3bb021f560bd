#include "rmtnet/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "rmtnet/error.hpp"
#include "rmtnet/export.hpp"
#include "text_util.hpp"

namespace rmtnet {

namespace {

constexpr std::array<std::string_view, 4> kColumns = {"period", "reporter",
                                                      "counterparty", "amount"};

std::string check_record(const FlowRecord &r) {
  if (r.reporter.empty() || r.counterparty.empty())
    return "empty entity code";
  if (r.reporter == r.counterparty)
    return "self-loop rejected (" + r.reporter + " -> " + r.counterparty + ")";
  if (!std::isfinite(r.amount))
    return "non-finite amount";
  if (r.amount < 0.0)
    return "negative amount";
  return {};
}

} // namespace

FlowRecordSet::FlowRecordSet(std::vector<FlowRecord> records)
    : records_(std::move(records)) {
  std::set<Period> periods;
  std::set<std::string> entities;
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto &r = records_[k];
    if (auto problem = check_record(r); !problem.empty())
      throw DataError("record " + std::to_string(k + 1) + ": " + problem);
    periods.insert(r.period);
    entities.insert(r.reporter);
    entities.insert(r.counterparty);
  }
  periods_.assign(periods.begin(), periods.end());
  entities_.assign(entities.begin(), entities.end());
}

bool FlowRecordSet::has_period(const Period &p) const {
  return std::binary_search(periods_.begin(), periods_.end(), p);
}

double FlowRecordSet::total_amount() const {
  double sum = 0.0;
  for (const auto &r : records_)
    sum += r.amount;
  return sum;
}

FlowRecordSet parse_flow_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line))
    throw RowError(1, "missing header");
  detail::strip_cr(line);
  detail::strip_bom(line);

  // Column positions by name so a reordered header still works.
  std::array<std::size_t, kColumns.size()> index{};
  const auto header = detail::split(line, ',');
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find_if(header.begin(), header.end(), [&](auto h) {
      return detail::trim(h) == kColumns[c];
    });
    if (it == header.end())
      throw RowError(1, "missing column '" + std::string(kColumns[c]) + "'");
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<FlowRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    detail::strip_cr(line);
    if (detail::trim(line).empty())
      continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() != header.size())
      throw RowError(row, "expected " + std::to_string(header.size()) +
                              " columns, found " +
                              std::to_string(fields.size()));

    FlowRecord r;
    const auto period_text = detail::trim(fields[index[0]]);
    const auto period = Period::parse(period_text);
    if (!period)
      throw RowError(row,
                     "malformed period label '" + std::string(period_text) + "'");
    r.period = *period;
    r.reporter = detail::to_upper(detail::trim(fields[index[1]]));
    r.counterparty = detail::to_upper(detail::trim(fields[index[2]]));
    const auto amount_text = detail::trim(fields[index[3]]);
    const auto amount = detail::parse_double(amount_text);
    if (!amount)
      throw RowError(row,
                     "non-numeric amount '" + std::string(amount_text) + "'");
    r.amount = *amount == 0.0 ? 0.0 : *amount; // drop the sign of -0
    if (auto problem = check_record(r); !problem.empty())
      throw RowError(row, problem);
    records.push_back(std::move(r));
  }
  return FlowRecordSet(std::move(records));
}

FlowRecordSet parse_flow_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_flow_csv(in);
}

FlowRecordSet read_flow_csv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path);
  return parse_flow_csv(in);
}

void write_flow_csv(std::ostream &out, const FlowRecordSet &set) {
  out << "period,reporter,counterparty,amount\n";
  for (const auto &r : set.records())
    out << r.period.str() << ',' << r.reporter << ',' << r.counterparty << ','
        << format_double(r.amount) << '\n';
}

std::string serialize_flow_csv(const FlowRecordSet &set) {
  std::ostringstream out;
  write_flow_csv(out, set);
  return out.str();
}

Table parse_table_csv(std::istream &in) {
  Table table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool first = true;

  const auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
    const bool blank = row.size() == 1 && row.front().empty();
    if (first) {
      if (!row.empty())
        detail::strip_bom(row.front());
      for (auto &h : row)
        h = std::string(detail::trim(h));
      table.header = std::move(row);
      first = false;
    } else if (!blank) {
      table.rows.push_back(std::move(row));
    }
    row.clear();
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
    case '"':
      in_quotes = true;
      field_started = true;
      break;
    case ',':
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
      break;
    case '\r':
      break;
    case '\n':
      end_row();
      break;
    default:
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes)
    throw DataError("unterminated quoted field");
  if (field_started || !row.empty())
    end_row();
  return table;
}

Table read_table_csv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path);
  return parse_table_csv(in);
}

} // namespace rmtnet
