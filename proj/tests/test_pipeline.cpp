#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rmtnet/error.hpp"
#include "rmtnet/export.hpp"
#include "rmtnet/json.hpp"
#include "rmtnet/pipeline.hpp"

using namespace rmtnet;

namespace {

FlowRecordSet two_entity() {
  return parse_flow_csv(std::string_view(
      "period,reporter,counterparty,amount\n2008-Q3,A,B,3\n2008-Q3,B,A,5\n"));
}

PipelineConfig small_config(std::size_t samples = 20) {
  PipelineConfig c;
  c.seed = 123;
  c.null_samples = samples;
  return c;
}

double sum(const std::vector<double> &v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

FlowRecordSet series(int periods, double pp_start, double pp_end, std::uint64_t seed) {
  SyntheticSeriesParams s;
  s.base.n_core = 4;
  s.base.n_periphery = 12;
  s.base.link_prob_pp = pp_start;
  s.base.seed = seed;
  s.link_prob_pp_end = pp_end;
  s.n_periods = periods;
  return generate_synthetic_series(s);
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("analyze_period on the two-entity dataset") {
  const auto r = analyze_period(two_entity(), Period(2008, 3), small_config());
  CHECK(std::abs(r.lambda_max - std::sqrt(15.0)) <= 1e-12);
  CHECK(r.total_volume == 8.0);
  CHECK(r.density == 1.0);
  CHECK(r.volume_share == std::vector<double>{50.0, 50.0});
  // Perron vector ∝ (√(3/5), 1): Σv⁴ = 1.36 / 2.56, so IPR = 32/17.
  CHECK(r.ipr_lambda_max == doctest::Approx(32.0 / 17.0).epsilon(1e-12));
  CHECK(r.participation[0] == doctest::Approx(37.5).epsilon(1e-12));
  CHECK(r.participation[1] == doctest::Approx(62.5).epsilon(1e-12));
  // Symmetrized [[0,4],[4,0]] has eigenvectors (1,±1)/√2.
  CHECK(r.mean_ipr == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(r.lambda_max_shuffled.mean - std::sqrt(15.0)) <= 1e-12);
  CHECK(r.ipr_lambda_max == ipr(r.market_mode));
}

TEST_CASE("analyze_period is deterministic") {
  auto c = small_config(1);
  const auto a = analyze_period(two_entity(), Period(2008, 3), c);
  const auto b = analyze_period(two_entity(), Period(2008, 3), c);
  CHECK(period_result_to_json(a, c).dump() == period_result_to_json(b, c).dump());
}

TEST_CASE("analyze_period errors carry the period") {
  CHECK_THROWS_AS(analyze_period(two_entity(), Period(2008, 4), small_config()), DataError);
  const auto zero = parse_flow_csv(std::string_view(
      "period,reporter,counterparty,amount\n2008-Q3,A,B,0\n"));
  try {
    analyze_period(zero, Period(2008, 3), small_config());
    FAIL("expected DataError");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("2008-Q3") != std::string::npos);
  }
}

TEST_CASE("symmetrized spectrum mode") {
  auto c = small_config();
  c.spectrum_mode = SpectrumMode::Symmetrized;
  const auto r = analyze_period(two_entity(), Period(2008, 3), c);
  CHECK(r.lambda_max == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.ipr_lambda_max == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("run_timeseries with one period") {
  const auto ts = run_timeseries(two_entity(), small_config());
  REQUIRE(ts.periods.size() == 1);
  CHECK(ts.entities == std::vector<std::string>{"A", "B"});
  CHECK_FALSE(ts.partial());
  CHECK(ts.fingerprint.size() == 16);
}

TEST_CASE("run_timeseries lambda scales with uniform growth") {
  std::string csv = "period,reporter,counterparty,amount\n";
  const char *rows[] = {"A,B,3", "B,A,5", "B,C,2", "C,A,1", "A,C,4"};
  for (int t = 0; t < 3; ++t)
    for (auto row : rows) {
      std::string r(row);
      const auto comma = r.rfind(',');
      const double w = std::stod(r.substr(comma + 1)) * (t + 1);
      csv += Period(2010, t + 1).str() + "," + r.substr(0, comma) + "," +
             format_double(w) + "\n";
    }
  const auto ts = run_timeseries(parse_flow_csv(csv), small_config());
  REQUIRE(ts.periods.size() == 3);
  const double base = ts.periods[0].lambda_max;
  CHECK(ts.periods[1].lambda_max == doctest::Approx(2.0 * base).epsilon(1e-10));
  CHECK(ts.periods[2].lambda_max == doctest::Approx(3.0 * base).epsilon(1e-10));
}

TEST_CASE("density tracks rising periphery link probability") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto ts = run_timeseries(series(4, 0.0, 0.9, seed), small_config(5));
    REQUIRE(ts.periods.size() == 4);
    for (std::size_t k = 1; k < ts.periods.size(); ++k)
      CHECK(ts.periods[k].density >= ts.periods[k - 1].density);
  }
}

TEST_CASE("run_timeseries matches analyze_period and ignores worker count") {
  const auto set = series(5, 0.1, 0.3, 9);
  auto c = small_config(10);
  const auto one = run_timeseries(set, c);
  c.workers = 4;
  const auto four = run_timeseries(set, c);
  CHECK(timeseries_to_json(one).dump() == timeseries_to_json(four).dump());

  const auto single = analyze_period(set, set.periods()[2], c);
  CHECK(period_result_to_json(single, c).dump() ==
        period_result_to_json(one.periods[2], c).dump());
}

TEST_CASE("run_timeseries skips all-zero periods") {
  const auto set = parse_flow_csv(std::string_view(
      "period,reporter,counterparty,amount\n2008-Q2,A,B,0\n2008-Q3,A,B,3\n2008-Q3,B,A,5\n"));
  const auto ts = run_timeseries(set, small_config());
  CHECK(ts.periods.size() == 1);
  CHECK(ts.skipped == std::vector<Period>{Period(2008, 2)});

  const auto all_zero = parse_flow_csv(std::string_view(
      "period,reporter,counterparty,amount\n2008-Q2,A,B,0\n"));
  CHECK_THROWS_AS(run_timeseries(all_zero, small_config()), DataError);
}

TEST_CASE("period results satisfy their invariants") {
  const auto ts = run_timeseries(series(6, 0.05, 0.5, 4), small_config(10));
  for (std::size_t k = 0; k < ts.periods.size(); ++k) {
    const auto &p = ts.periods[k];
    if (k > 0)
      CHECK(ts.periods[k - 1].period < p.period);
    CHECK(std::abs(sum(p.participation) - 100.0) <= 1e-6);
    CHECK(std::abs(sum(p.volume_share) - 100.0) <= 1e-6);
    CHECK(p.ipr_lambda_max == ipr(p.market_mode));
    CHECK(std::isfinite(p.gap()));
    CHECK(p.lambda_max_shuffled.n_samples == 10);
  }
}

TEST_CASE("equal-weight complete digraph matches its weight-permute null") {
  std::string csv = "period,reporter,counterparty,amount\n";
  const std::vector<std::string> codes{"A", "B", "C", "D"};
  for (const auto &a : codes)
    for (const auto &b : codes)
      if (a != b)
        csv += "2001-Q1," + a + "," + b + ",2.5\n";
  auto c = small_config(10);
  c.null_mode = ShuffleMode::WeightPermute;
  const auto r = analyze_period(parse_flow_csv(csv), Period(2001, 1), c);
  CHECK(r.lambda_max == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(r.lambda_max >= r.lambda_max_shuffled.mean - 1e-9);
}

TEST_CASE("timeseries CSV export") {
  const auto ts = run_timeseries(two_entity(), small_config());
  std::ostringstream out;
  write_timeseries_csv(out, ts);
  const auto text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.starts_with("period,lambda_max,lambda_sh_mean,lambda_sh_q99,mean_ipr,"
                         "ipr_lambda_max,total_volume,density,gap\n2008-Q3,"));

  auto c = small_config();
  c.volume_normalized = true;
  std::ostringstream norm;
  write_timeseries_csv(norm, run_timeseries(two_entity(), c));
  CHECK(norm.str().find(",lambda_max_per_volume\n") != std::string::npos);
}

TEST_CASE("export writes files and JSON round-trips") {
  auto c = small_config(8);
  c.include_lambda_values = true;
  c.volume_normalized = true;
  const auto ts = run_timeseries(series(3, 0.1, 0.4, 2), c);
  const auto dir = std::filesystem::temp_directory_path() / "rmtnet_test_export";
  std::filesystem::remove_all(dir);

  const auto csv_files = export_timeseries(ts, ExportFormat::Csv, dir);
  CHECK(csv_files.size() == 1 + ts.periods.size());
  for (std::size_t k = 1; k < csv_files.size(); ++k) {
    std::istringstream in(slurp(csv_files[k]));
    std::string line;
    std::getline(in, line);
    CHECK(line == "entity,participation_pct,volume_share_pct");
    double part = 0.0, vol = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      const auto a = line.find(','), b = line.rfind(',');
      part += std::stod(line.substr(a + 1, b - a - 1));
      vol += std::stod(line.substr(b + 1));
      ++rows;
    }
    CHECK(rows == ts.entities.size());
    CHECK(std::abs(part - 100.0) <= 1e-6);
    CHECK(std::abs(vol - 100.0) <= 1e-6);
  }

  const auto json_files = export_timeseries(ts, ExportFormat::Json, dir);
  REQUIRE(json_files.size() == 1);
  const auto back = timeseries_from_json(Json::parse(slurp(json_files[0])));
  CHECK(back.fingerprint == ts.fingerprint);
  CHECK(back.config == ts.config);
  CHECK(back.entities == ts.entities);
  REQUIRE(back.periods.size() == ts.periods.size());
  for (std::size_t k = 0; k < ts.periods.size(); ++k) {
    const auto &a = ts.periods[k];
    const auto &b = back.periods[k];
    CHECK(a.period == b.period);
    CHECK(a.lambda_max == b.lambda_max);
    CHECK(a.market_mode == b.market_mode);
    CHECK(a.lambda_max_shuffled.lambda_values == b.lambda_max_shuffled.lambda_values);
    CHECK(a.lambda_max_shuffled.q99 == b.lambda_max_shuffled.q99);
    CHECK(a.lambda_max_shuffled.seed == b.lambda_max_shuffled.seed);
    CHECK(a.mean_ipr == b.mean_ipr);
    CHECK(a.ipr_lambda_max == b.ipr_lambda_max);
    CHECK(a.total_volume == b.total_volume);
    CHECK(a.density == b.density);
    CHECK(a.participation == b.participation);
    CHECK(a.volume_share == b.volume_share);
  }
  CHECK(timeseries_to_json(back).dump() == timeseries_to_json(ts).dump());
  std::filesystem::remove_all(dir);
}

TEST_CASE("config JSON overlay") {
  PipelineConfig base;
  base.seed = 5;
  const auto c = config_from_json(
      Json::parse(R"({"null_samples": 7, "null_mode": "weight-permute", "linkage": "single"})"),
      base);
  CHECK(c.seed == 5);
  CHECK(c.null_samples == 7);
  CHECK(c.null_mode == ShuffleMode::WeightPermute);
  CHECK(c.linkage == Linkage::Single);
  CHECK(config_from_json(config_to_json(c)) == c);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"nul_samples": 7})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"null_mode": "rewire"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": "x"})")), ConfigError);
}

TEST_CASE("fingerprint follows content") {
  const auto a = two_entity();
  const auto b = parse_flow_csv(std::string_view(
      "period,reporter,counterparty,amount\n2008-Q3,A,B,3\n2008-Q3,B,A,5.000001\n"));
  CHECK(fingerprint(a) == fingerprint(two_entity()));
  CHECK(fingerprint(a) != fingerprint(b));
}
