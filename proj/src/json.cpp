#include "rmtnet/json.hpp"

#include "rmtnet/error.hpp"

namespace rmtnet {

namespace {

Json vector_json(const Eigen::VectorXd &v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from(const Json &j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

Period period_from(const Json &j) {
  const auto text = j.get<std::string>();
  const auto p = Period::parse(text);
  if (!p)
    throw DataError("malformed period label '" + text + "'");
  return *p;
}

template <class T> T checked(const Json &j, const char *key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception &e) {
    throw ConfigError(std::string("JSON field '") + key + "': " + e.what());
  }
}

} // namespace

std::string to_string(ShuffleMode mode) {
  return mode == ShuffleMode::LinkShuffle ? "link-shuffle" : "weight-permute";
}

std::string to_string(SpectrumMode mode) {
  return mode == SpectrumMode::DirectedPerron ? "directed-perron"
                                              : "symmetrized";
}

std::string to_string(ShareMode mode) {
  switch (mode) {
  case ShareMode::Out:
    return "out";
  case ShareMode::In:
    return "in";
  case ShareMode::Both:
    break;
  }
  return "both";
}

std::string to_string(Linkage linkage) {
  switch (linkage) {
  case Linkage::Single:
    return "single";
  case Linkage::Complete:
    return "complete";
  case Linkage::Average:
    break;
  }
  return "average";
}

ShuffleMode parse_shuffle_mode(std::string_view text) {
  if (text == "link-shuffle")
    return ShuffleMode::LinkShuffle;
  if (text == "weight-permute")
    return ShuffleMode::WeightPermute;
  throw ConfigError("invalid null mode '" + std::string(text) + "'");
}

SpectrumMode parse_spectrum_mode(std::string_view text) {
  if (text == "directed-perron")
    return SpectrumMode::DirectedPerron;
  if (text == "symmetrized")
    return SpectrumMode::Symmetrized;
  throw ConfigError("invalid spectrum mode '" + std::string(text) + "'");
}

ShareMode parse_share_mode(std::string_view text) {
  if (text == "both")
    return ShareMode::Both;
  if (text == "out")
    return ShareMode::Out;
  if (text == "in")
    return ShareMode::In;
  throw ConfigError("invalid share mode '" + std::string(text) + "'");
}

Linkage parse_linkage(std::string_view text) {
  if (text == "average")
    return Linkage::Average;
  if (text == "single")
    return Linkage::Single;
  if (text == "complete")
    return Linkage::Complete;
  throw ConfigError("invalid linkage '" + std::string(text) + "'");
}

Json snapshot_to_json(const NetworkSnapshot &s) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < s.size(); ++i)
    rows.push_back(vector_json(s.weights.row(i).transpose()));
  return Json{{"period", s.period.str()},
              {"entities", s.entities},
              {"weights", std::move(rows)}};
}

NetworkSnapshot snapshot_from_json(const Json &j) {
  NetworkSnapshot s;
  s.period = period_from(j.at("period"));
  s.entities = checked<std::vector<std::string>>(j, "entities");
  const auto n = static_cast<Eigen::Index>(s.entities.size());
  const auto &rows = j.at("weights");
  if (static_cast<Eigen::Index>(rows.size()) != n)
    throw DataError("snapshot JSON: weights row count mismatch");
  s.weights.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw DataError("snapshot JSON: weights column count mismatch");
    for (Eigen::Index k = 0; k < n; ++k)
      s.weights(i, k) = row[static_cast<std::size_t>(k)];
  }
  s.validate();
  return s;
}

Json spectral_to_json(const SpectralSummary &summary, const Period &period,
                      const std::vector<double> &participation) {
  return Json{{"period", period.str()},
              {"mode", to_string(summary.mode)},
              {"eigenvalues", summary.eigenvalues},
              {"iprs", summary.iprs},
              {"lambda_max", summary.lambda_max},
              {"market_mode", vector_json(summary.market_mode)},
              {"participation", participation}};
}

Json null_stats_to_json(const NullEnsembleStats &stats,
                        std::optional<Period> period,
                        bool include_lambda_values) {
  Json j = Json::object();
  if (period)
    j["period"] = period->str();
  j["mode"] = to_string(stats.mode);
  j["n_samples"] = stats.n_samples;
  j["seed"] = stats.seed;
  j["mean"] = stats.mean;
  j["std"] = stats.std;
  j["q01"] = stats.q01;
  j["q50"] = stats.q50;
  j["q99"] = stats.q99;
  if (include_lambda_values)
    j["lambda_values"] = stats.lambda_values;
  return j;
}

NullEnsembleStats null_stats_from_json(const Json &j) {
  NullEnsembleStats s;
  s.mode = parse_shuffle_mode(checked<std::string>(j, "mode"));
  s.n_samples = checked<std::size_t>(j, "n_samples");
  s.seed = checked<std::uint64_t>(j, "seed");
  s.mean = checked<double>(j, "mean");
  s.std = checked<double>(j, "std");
  s.q01 = checked<double>(j, "q01");
  s.q50 = checked<double>(j, "q50");
  s.q99 = checked<double>(j, "q99");
  if (j.contains("lambda_values"))
    s.lambda_values = j["lambda_values"].get<std::vector<double>>();
  return s;
}

Json dendrogram_to_json(const Dendrogram &dend,
                        const std::vector<std::string> &labels,
                        const std::vector<int> &order) {
  Json merges = Json::array();
  for (const auto &m : dend.merges)
    merges.push_back(
        {{"left", m.left}, {"right", m.right}, {"height", m.height}, {"id", m.id}});
  std::vector<std::string> ordered;
  for (int i : order)
    ordered.push_back(labels.at(static_cast<std::size_t>(i)));
  return Json{{"entities", labels},
              {"merges", std::move(merges)},
              {"leaf_order", order},
              {"leaf_labels", ordered},
              {"newick", to_newick(dend, labels)}};
}

Json config_to_json(const PipelineConfig &c) {
  return Json{{"seed", c.seed},
              {"null_samples", c.null_samples},
              {"null_mode", to_string(c.null_mode)},
              {"spectrum_mode", to_string(c.spectrum_mode)},
              {"share_mode", to_string(c.share_mode)},
              {"linkage", to_string(c.linkage)},
              {"volume_normalized", c.volume_normalized},
              {"include_lambda_values", c.include_lambda_values}};
}

PipelineConfig config_from_json(const Json &j, PipelineConfig c) {
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  for (const auto &[key, value] : j.items()) {
    try {
      if (key == "seed")
        c.seed = value.get<std::uint64_t>();
      else if (key == "null_samples")
        c.null_samples = value.get<std::size_t>();
      else if (key == "null_mode")
        c.null_mode = parse_shuffle_mode(value.get<std::string>());
      else if (key == "spectrum_mode")
        c.spectrum_mode = parse_spectrum_mode(value.get<std::string>());
      else if (key == "share_mode")
        c.share_mode = parse_share_mode(value.get<std::string>());
      else if (key == "linkage")
        c.linkage = parse_linkage(value.get<std::string>());
      else if (key == "volume_normalized")
        c.volume_normalized = value.get<bool>();
      else if (key == "include_lambda_values")
        c.include_lambda_values = value.get<bool>();
      else if (key == "workers")
        c.workers = value.get<unsigned>();
      else
        throw ConfigError("unknown config key '" + key + "'");
    } catch (const Json::exception &e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  return c;
}

Json period_result_to_json(const PeriodResult &r, const PipelineConfig &config) {
  Json j = Json::object();
  j["period"] = r.period.str();
  j["lambda_max"] = r.lambda_max;
  if (config.volume_normalized)
    j["lambda_max_per_volume"] = r.lambda_max / r.total_volume;
  j["lambda_max_shuffled"] =
      null_stats_to_json(r.lambda_max_shuffled, std::nullopt,
                         config.include_lambda_values);
  j["gap"] = r.gap();
  j["mean_ipr"] = r.mean_ipr;
  j["ipr_lambda_max"] = r.ipr_lambda_max;
  j["total_volume"] = r.total_volume;
  j["density"] = r.density;
  j["market_mode"] = vector_json(r.market_mode);
  j["participation"] = r.participation;
  j["volume_share"] = r.volume_share;
  return j;
}

PeriodResult period_result_from_json(const Json &j) {
  PeriodResult r;
  r.period = period_from(j.at("period"));
  r.lambda_max = checked<double>(j, "lambda_max");
  r.lambda_max_shuffled = null_stats_from_json(j.at("lambda_max_shuffled"));
  r.mean_ipr = checked<double>(j, "mean_ipr");
  r.ipr_lambda_max = checked<double>(j, "ipr_lambda_max");
  r.total_volume = checked<double>(j, "total_volume");
  r.density = checked<double>(j, "density");
  r.market_mode = vector_from(j.at("market_mode"));
  r.participation = checked<std::vector<double>>(j, "participation");
  r.volume_share = checked<std::vector<double>>(j, "volume_share");
  return r;
}

Json timeseries_to_json(const TimeSeriesResult &result) {
  Json periods = Json::array();
  for (const auto &p : result.periods)
    periods.push_back(period_result_to_json(p, result.config));
  Json skipped = Json::array();
  for (const auto &p : result.skipped)
    skipped.push_back(p.str());
  Json failures = Json::array();
  for (const auto &f : result.failures)
    failures.push_back({{"period", f.period.str()}, {"message", f.message}});
  return Json{{"fingerprint", result.fingerprint},
              {"config", config_to_json(result.config)},
              {"entities", result.entities},
              {"partial", result.partial()},
              {"periods", std::move(periods)},
              {"skipped", std::move(skipped)},
              {"failures", std::move(failures)}};
}

TimeSeriesResult timeseries_from_json(const Json &j) {
  TimeSeriesResult r;
  r.fingerprint = checked<std::string>(j, "fingerprint");
  r.config = config_from_json(j.at("config"));
  r.entities = checked<std::vector<std::string>>(j, "entities");
  for (const auto &p : j.at("periods"))
    r.periods.push_back(period_result_from_json(p));
  for (const auto &p : j.at("skipped"))
    r.skipped.push_back(period_from(p));
  for (const auto &f : j.at("failures"))
    r.failures.push_back(
        {period_from(f.at("period")), f.at("message").get<std::string>()});
  return r;
}

} // namespace rmtnet
