#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rmtnet/cluster.hpp"
#include "rmtnet/network.hpp"
#include "rmtnet/nullmodel.hpp"
#include "rmtnet/pipeline.hpp"
#include "rmtnet/spectral.hpp"

namespace rmtnet {

using Json = nlohmann::ordered_json;

std::string to_string(ShuffleMode mode);
std::string to_string(SpectrumMode mode);
std::string to_string(ShareMode mode);
std::string to_string(Linkage linkage);

// Throw ConfigError on unknown tags.
ShuffleMode parse_shuffle_mode(std::string_view text);
SpectrumMode parse_spectrum_mode(std::string_view text);
ShareMode parse_share_mode(std::string_view text);
Linkage parse_linkage(std::string_view text);

Json snapshot_to_json(const NetworkSnapshot &snapshot);
NetworkSnapshot snapshot_from_json(const Json &j);

Json spectral_to_json(const SpectralSummary &summary, const Period &period,
                      const std::vector<double> &participation);

Json null_stats_to_json(const NullEnsembleStats &stats,
                        std::optional<Period> period,
                        bool include_lambda_values);
NullEnsembleStats null_stats_from_json(const Json &j);

Json dendrogram_to_json(const Dendrogram &dendrogram,
                        const std::vector<std::string> &labels,
                        const std::vector<int> &order);

Json config_to_json(const PipelineConfig &config);
/// Overlays the keys present in `j` onto `base`.
PipelineConfig config_from_json(const Json &j, PipelineConfig base = {});

Json period_result_to_json(const PeriodResult &result,
                           const PipelineConfig &config);
PeriodResult period_result_from_json(const Json &j);

Json timeseries_to_json(const TimeSeriesResult &result);
TimeSeriesResult timeseries_from_json(const Json &j);

} // namespace rmtnet
