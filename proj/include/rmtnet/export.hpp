#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmtnet/pipeline.hpp"

namespace rmtnet {

/// Shortest decimal string that reads back to the same double.
std::string format_double(double value);

/// One row per period: period, lambda_max, lambda_sh_mean, lambda_sh_q99,
/// mean_ipr, ipr_lambda_max, total_volume, density, gap, and
/// lambda_max_per_volume when the run asked for it.
void write_timeseries_csv(std::ostream &out, const TimeSeriesResult &result);

/// entity, participation_pct, volume_share_pct.
void write_participation_csv(std::ostream &out,
                             const std::vector<std::string> &entities,
                             const PeriodResult &result);

enum class ExportFormat { Csv, Json };

/// Writes `timeseries.csv` plus `participation_<period>.csv` per period
/// (Csv), or `timeseries.json` (Json), under `dir`. Returns written paths.
std::vector<std::filesystem::path>
export_timeseries(const TimeSeriesResult &result, ExportFormat format,
                  const std::filesystem::path &dir);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path &path,
                     const std::string &text);

} // namespace rmtnet
