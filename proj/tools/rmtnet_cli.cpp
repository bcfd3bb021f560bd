// rmtnet: spectral analysis of bilateral flow networks.
//
//   rmtnet synth --periods 160 --out data/flows.csv
//   rmtnet timeseries --input data/flows.csv --seed 7 --out results/
//   rmtnet analyze --input data/flows.csv --period 2008-Q3 --format json
//
// Exit codes: 0 success, 1 data error, 2 numerical non-convergence,
// 3 IO or configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rmtnet/cluster.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/export.hpp"
#include "rmtnet/ingest.hpp"
#include "rmtnet/json.hpp"
#include "rmtnet/network.hpp"
#include "rmtnet/nullmodel.hpp"
#include "rmtnet/pipeline.hpp"
#include "rmtnet/spectral.hpp"

namespace fs = std::filesystem;
using namespace rmtnet;

namespace {

struct CommonOptions {
  std::string input;
  std::string config_path;
  std::string out;
  std::string format;
  std::string period;
  std::uint64_t seed = 1;
  std::size_t null_samples = 100;
  std::string null_mode = "link-shuffle";
  std::string spectrum_mode = "directed-perron";
  std::string share_mode = "both";
  std::string linkage = "average";
  unsigned workers = 1;
  bool volume_normalized = false;
  bool lambda_values = false;

  // Options whose presence overrides the config file.
  CLI::Option *seed_opt = nullptr;
  CLI::Option *samples_opt = nullptr;
  CLI::Option *null_mode_opt = nullptr;
  CLI::Option *spectrum_opt = nullptr;
  CLI::Option *share_opt = nullptr;
  CLI::Option *linkage_opt = nullptr;
  CLI::Option *workers_opt = nullptr;
  CLI::Option *normalized_opt = nullptr;
  CLI::Option *values_opt = nullptr;
};

void add_common(CLI::App *cmd, CommonOptions &o, bool needs_period) {
  cmd->add_option("--input", o.input, "Flow CSV (period,reporter,counterparty,amount)")
      ->required();
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--out", o.out, "Output directory (stdout when omitted)");
  if (needs_period)
    cmd->add_option("--period", o.period,
                    "Quarter label YYYY-Qn (default: only period in the file)");
  o.seed_opt = cmd->add_option("--seed", o.seed, "Master seed");
  o.samples_opt =
      cmd->add_option("--null-samples", o.null_samples, "Shuffled replicas per period");
  o.null_mode_opt = cmd->add_option("--null-mode", o.null_mode, "Shuffle null")
                        ->check(CLI::IsMember({"link-shuffle", "weight-permute"}));
  o.spectrum_opt =
      cmd->add_option("--spectrum-mode", o.spectrum_mode, "Source of lambda_max")
          ->check(CLI::IsMember({"directed-perron", "symmetrized"}));
  o.share_opt = cmd->add_option("--share-mode", o.share_mode, "Volume share basis")
                    ->check(CLI::IsMember({"both", "out", "in"}));
  o.linkage_opt = cmd->add_option("--linkage", o.linkage, "Dendrogram linkage")
                      ->check(CLI::IsMember({"average", "single", "complete"}));
  o.workers_opt = cmd->add_option("--workers", o.workers, "Worker threads");
  o.normalized_opt = cmd->add_flag("--volume-normalized", o.volume_normalized,
                                   "Also emit lambda_max / total_volume");
  o.values_opt = cmd->add_flag("--lambda-values", o.lambda_values,
                               "Include every replica lambda in JSON output");
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

PipelineConfig resolve_config(const CommonOptions &o) {
  PipelineConfig c;
  if (!o.config_path.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(o.config_path));
    } catch (const Json::exception &e) {
      throw ConfigError("config " + o.config_path + ": " + e.what());
    }
    c = config_from_json(j, c);
  }
  if (o.seed_opt->count())
    c.seed = o.seed;
  if (o.samples_opt->count())
    c.null_samples = o.null_samples;
  if (o.null_mode_opt->count())
    c.null_mode = parse_shuffle_mode(o.null_mode);
  if (o.spectrum_opt->count())
    c.spectrum_mode = parse_spectrum_mode(o.spectrum_mode);
  if (o.share_opt->count())
    c.share_mode = parse_share_mode(o.share_mode);
  if (o.linkage_opt->count())
    c.linkage = parse_linkage(o.linkage);
  if (o.workers_opt->count())
    c.workers = o.workers;
  if (o.normalized_opt->count())
    c.volume_normalized = o.volume_normalized;
  if (o.values_opt->count())
    c.include_lambda_values = o.lambda_values;
  return c;
}

Period resolve_period(const FlowRecordSet &records, const std::string &label) {
  if (label.empty()) {
    if (records.periods().size() != 1)
      throw ConfigError("--period is required for multi-period input");
    return records.periods().front();
  }
  const auto p = Period::parse(label);
  if (!p)
    throw ConfigError("malformed --period '" + label + "'");
  return *p;
}

void emit(const CommonOptions &o, const std::string &name,
          const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  write_text_file(fs::path(o.out) / name, text);
  std::cerr << "wrote " << (fs::path(o.out) / name).string() << '\n';
}

void require_format(const std::string &format,
                    std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed)
    if (format == a)
      return;
  throw ConfigError("unsupported --format '" + format + "' for this command");
}

int run_analyze(const CommonOptions &o) {
  const auto config = resolve_config(o);
  const auto records = read_flow_csv(o.input);
  const auto period = resolve_period(records, o.period);
  const auto format = o.format.empty() ? std::string("json") : o.format;
  require_format(format, {"json", "csv", "dot"});
  const auto tag = period.str();

  const auto snap = build_snapshot(records, period);
  if (format == "dot") {
    std::ostringstream dot;
    write_dot(dot, snap);
    emit(o, tag + ".dot", dot.str());
    return 0;
  }

  const auto result = analyze_period(records, period, config);
  TimeSeriesResult single;
  single.entities = records.entities();
  single.periods = {result};
  single.fingerprint = fingerprint(records);
  single.config = config;

  if (format == "csv") {
    std::ostringstream row, table;
    write_timeseries_csv(row, single);
    write_participation_csv(table, single.entities, result);
    if (o.out.empty()) {
      std::cout << row.str();
      return 0;
    }
    emit(o, tag + "_summary.csv", row.str());
    emit(o, "participation_" + tag + ".csv", table.str());
    return 0;
  }

  Json j = period_result_to_json(result, config);
  j["entities"] = single.entities;
  j["config"] = config_to_json(config);
  j["fingerprint"] = single.fingerprint;
  if (o.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  const auto summary =
      config.spectrum_mode == SpectrumMode::DirectedPerron
          ? directed_summary(leading_eigenpair(snap))
          : full_spectrum(symmetrize(snap));
  emit(o, tag + "_result.json", j.dump(2) + "\n");
  emit(o, tag + "_snapshot.json", snapshot_to_json(snap).dump(2) + "\n");
  emit(o, tag + "_spectrum.json",
       spectral_to_json(summary, period, participation_percent(summary.market_mode))
               .dump(2) +
           "\n");
  if (config.spectrum_mode == SpectrumMode::DirectedPerron) {
    const auto sym = full_spectrum(symmetrize(snap));
    emit(o, tag + "_spectrum_symmetrized.json",
         spectral_to_json(sym, period, participation_percent(sym.market_mode))
                 .dump(2) +
             "\n");
  }
  emit(o, tag + "_null.json",
       null_stats_to_json(result.lambda_max_shuffled, period,
                          config.include_lambda_values)
               .dump(2) +
           "\n");
  std::ostringstream table;
  write_participation_csv(table, single.entities, result);
  emit(o, "participation_" + tag + ".csv", table.str());
  return 0;
}

int run_timeseries_cmd(const CommonOptions &o) {
  const auto config = resolve_config(o);
  const auto records = read_flow_csv(o.input);
  const auto result = run_timeseries(records, config);
  for (const auto &p : result.skipped)
    std::cerr << "warning: skipped " << p.str() << " (all-zero matrix)\n";
  for (const auto &f : result.failures)
    std::cerr << "warning: " << f.period.str() << " failed: " << f.message
              << '\n';

  if (o.out.empty()) {
    if (o.format == "json")
      std::cout << timeseries_to_json(result).dump(2) << '\n';
    else
      write_timeseries_csv(std::cout, result);
    return 0;
  }
  if (!o.format.empty())
    require_format(o.format, {"csv", "json"});
  std::vector<fs::path> written;
  if (o.format.empty() || o.format == "csv")
    for (auto &p : export_timeseries(result, ExportFormat::Csv, o.out))
      written.push_back(std::move(p));
  if (o.format.empty() || o.format == "json")
    for (auto &p : export_timeseries(result, ExportFormat::Json, o.out))
      written.push_back(std::move(p));
  std::cerr << "wrote " << written.size() << " files to " << o.out << '\n';
  return 0;
}

int run_shuffle(const CommonOptions &o) {
  const auto config = resolve_config(o);
  const auto records = read_flow_csv(o.input);
  const auto period = resolve_period(records, o.period);
  const auto format = o.format.empty() ? std::string("json") : o.format;
  require_format(format, {"json", "csv", "dot"});
  const auto snap = build_snapshot(records, period);
  const auto shuffled = shuffle_snapshot(snap, config.seed, config.null_mode);
  const auto tag = period.str() + "_shuffled";

  if (format == "dot") {
    std::ostringstream dot;
    write_dot(dot, shuffled);
    emit(o, tag + ".dot", dot.str());
  } else if (format == "csv") {
    std::vector<FlowRecord> flows;
    for (Eigen::Index i = 0; i < shuffled.size(); ++i)
      for (Eigen::Index j = 0; j < shuffled.size(); ++j)
        if (shuffled.weights(i, j) != 0.0)
          flows.push_back({period, shuffled.entities[i], shuffled.entities[j],
                           shuffled.weights(i, j)});
    emit(o, tag + ".csv", serialize_flow_csv(FlowRecordSet(std::move(flows))));
  } else {
    Json j = snapshot_to_json(shuffled);
    j["seed"] = config.seed;
    j["mode"] = to_string(config.null_mode);
    emit(o, tag + ".json", j.dump(2) + "\n");
  }
  return 0;
}

int run_dendrogram(const CommonOptions &o) {
  const auto config = resolve_config(o);
  const auto records = read_flow_csv(o.input);
  const auto period = resolve_period(records, o.period);
  const auto format = o.format.empty() ? std::string("json") : o.format;
  require_format(format, {"json", "newick"});
  const auto sym = symmetrize(build_snapshot(records, period));
  const auto dend = agglomerate(distance_matrix(sym), config.linkage);
  const auto order = leaf_order(dend);
  const auto tag = period.str() + "_dendrogram";

  if (format == "newick") {
    emit(o, tag + ".nwk", to_newick(dend, sym.entities) + "\n");
    return 0;
  }
  Json j = dendrogram_to_json(dend, sym.entities, order);
  j["period"] = period.str();
  j["linkage"] = to_string(config.linkage);
  const Eigen::MatrixXd reordered = reorder(sym.values, order);
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < reordered.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < reordered.cols(); ++k)
      row.push_back(reordered(i, k));
    rows.push_back(std::move(row));
  }
  j["reordered_weights"] = std::move(rows);
  emit(o, tag + ".json", j.dump(2) + "\n");
  return 0;
}

void write_flows(const std::string &out, const FlowRecordSet &records) {
  const auto text = serialize_flow_csv(records);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  fs::path path(out);
  if (path.extension() != ".csv")
    path /= "flows.csv";
  write_text_file(path, text);
  std::cerr << "wrote " << records.size() << " records to " << path.string()
            << '\n';
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectral analysis of weighted directed bilateral-flow networks"};
  app.require_subcommand(1);

  CommonOptions analyze_opts, series_opts, shuffle_opts, dendro_opts;

  auto *analyze = app.add_subcommand("analyze", "Analyze one period");
  add_common(analyze, analyze_opts, true);
  analyze->add_option("--format", analyze_opts.format, "json (default), csv or dot");

  auto *series = app.add_subcommand("timeseries", "Analyze every period");
  add_common(series, series_opts, false);
  series->add_option("--format", series_opts.format,
                     "csv or json (both when writing to --out)");

  auto *shuffle = app.add_subcommand("shuffle", "Emit one shuffled surrogate");
  add_common(shuffle, shuffle_opts, true);
  shuffle->add_option("--format", shuffle_opts.format, "json (default), csv or dot");

  auto *dendro = app.add_subcommand("dendrogram", "Cluster one period");
  add_common(dendro, dendro_opts, true);
  dendro->add_option("--format", dendro_opts.format, "json (default) or newick");

  SyntheticSeriesParams synth_params;
  synth_params.link_prob_pp_end = -1.0;
  std::string synth_start = "2000-Q1", synth_out;
  auto *synth = app.add_subcommand("synth", "Generate a synthetic core-periphery dataset");
  synth->add_option("--n-core", synth_params.base.n_core, "Core entities")
      ->capture_default_str();
  synth->add_option("--n-periphery", synth_params.base.n_periphery, "Periphery entities")
      ->capture_default_str();
  synth->add_option("--core-scale", synth_params.base.core_weight_scale,
                    "Upper bound of core-core weights")
      ->capture_default_str();
  synth->add_option("--periphery-scale", synth_params.base.periphery_weight_scale,
                    "Upper bound of weights touching the periphery")
      ->capture_default_str();
  synth->add_option("--link-prob", synth_params.base.link_prob_pp,
                    "Periphery-periphery link probability")
      ->capture_default_str();
  synth->add_option("--link-prob-end", synth_params.link_prob_pp_end,
                    "Link probability in the last period (default: --link-prob)");
  synth->add_option("--periods", synth_params.n_periods, "Number of quarters")
      ->capture_default_str();
  synth->add_option("--start", synth_start, "First quarter")->capture_default_str();
  synth->add_option("--growth", synth_params.weight_growth,
                    "Weight scale multiplier per quarter")
      ->capture_default_str();
  synth->add_option("--seed", synth_params.base.seed, "Seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output CSV file or directory");

  std::string bis_input, bis_mapping, bis_out;
  auto *convert = app.add_subcommand("convert-bis", "Convert a BIS LBS CSV extract");
  convert->add_option("--input", bis_input, "Source CSV")->required();
  convert->add_option("--mapping", bis_mapping, "Column mapping (key=value or JSON)")
      ->required();
  convert->add_option("--out", bis_out, "Output CSV file or directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(ErrorKind::Config);
  }

  try {
    if (*analyze)
      return run_analyze(analyze_opts);
    if (*series)
      return run_timeseries_cmd(series_opts);
    if (*shuffle)
      return run_shuffle(shuffle_opts);
    if (*dendro)
      return run_dendrogram(dendro_opts);
    if (*synth) {
      const auto start = Period::parse(synth_start);
      if (!start)
        throw ConfigError("malformed --start '" + synth_start + "'");
      synth_params.base.period = *start;
      if (synth_params.link_prob_pp_end < 0.0)
        synth_params.link_prob_pp_end = synth_params.base.link_prob_pp;
      write_flows(synth_out, generate_synthetic_series(synth_params));
      return 0;
    }
    if (*convert) {
      const auto result = convert_bis_lbs(read_table_csv(bis_input),
                                          read_bis_mapping(bis_mapping));
      const auto &r = result.report;
      std::cerr << "rows read " << r.rows_read << ", filtered " << r.rows_filtered
                << ", dropped missing " << r.dropped_missing
                << ", dropped invalid " << r.dropped_invalid << ", kept "
                << r.rows_kept << ", records " << r.records_out << '\n';
      write_flows(bis_out, result.records);
      return 0;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(ErrorKind::Config);
  }
  return 0;
}
