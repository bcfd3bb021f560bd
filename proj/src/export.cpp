#include "rmtnet/export.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rmtnet/error.hpp"
#include "rmtnet/json.hpp"

namespace rmtnet {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc())
    return "nan";
  return std::string(buf, ptr);
}

void write_timeseries_csv(std::ostream &out, const TimeSeriesResult &result) {
  out << "period,lambda_max,lambda_sh_mean,lambda_sh_q99,mean_ipr,"
         "ipr_lambda_max,total_volume,density,gap";
  if (result.config.volume_normalized)
    out << ",lambda_max_per_volume";
  out << '\n';
  for (const auto &p : result.periods) {
    out << p.period.str() << ',' << format_double(p.lambda_max) << ','
        << format_double(p.lambda_max_shuffled.mean) << ','
        << format_double(p.lambda_max_shuffled.q99) << ','
        << format_double(p.mean_ipr) << ',' << format_double(p.ipr_lambda_max)
        << ',' << format_double(p.total_volume) << ','
        << format_double(p.density) << ',' << format_double(p.gap());
    if (result.config.volume_normalized)
      out << ',' << format_double(p.lambda_max / p.total_volume);
    out << '\n';
  }
}

void write_participation_csv(std::ostream &out,
                             const std::vector<std::string> &entities,
                             const PeriodResult &result) {
  out << "entity,participation_pct,volume_share_pct\n";
  for (std::size_t i = 0; i < entities.size(); ++i)
    out << entities[i] << ',' << format_double(result.participation.at(i))
        << ',' << format_double(result.volume_share.at(i)) << '\n';
}

void write_text_file(const std::filesystem::path &path,
                     const std::string &text) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  if (ec)
    throw IoError("cannot create directory " + path.parent_path().string() +
                  ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out)
    throw IoError("write failed for " + path.string());
}

std::vector<std::filesystem::path>
export_timeseries(const TimeSeriesResult &result, ExportFormat format,
                  const std::filesystem::path &dir) {
  std::vector<std::filesystem::path> written;
  if (format == ExportFormat::Json) {
    const auto path = dir / "timeseries.json";
    write_text_file(path, timeseries_to_json(result).dump(2) + "\n");
    written.push_back(path);
    return written;
  }

  std::ostringstream csv;
  write_timeseries_csv(csv, result);
  written.push_back(dir / "timeseries.csv");
  write_text_file(written.back(), csv.str());
  for (const auto &p : result.periods) {
    std::ostringstream table;
    write_participation_csv(table, result.entities, p);
    written.push_back(dir / ("participation_" + p.period.str() + ".csv"));
    write_text_file(written.back(), table.str());
  }
  return written;
}

} // namespace rmtnet
