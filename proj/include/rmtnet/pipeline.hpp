#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmtnet/cluster.hpp"
#include "rmtnet/ingest.hpp"
#include "rmtnet/network.hpp"
#include "rmtnet/nullmodel.hpp"
#include "rmtnet/spectral.hpp"

namespace rmtnet {

struct PipelineConfig {
  std::uint64_t seed = 1;
  std::size_t null_samples = 100;
  ShuffleMode null_mode = ShuffleMode::LinkShuffle;
  /// Source of lambda_max and the market mode. ⟨IPR⟩ always comes from the
  /// symmetrized spectrum.
  SpectrumMode spectrum_mode = SpectrumMode::DirectedPerron;
  ShareMode share_mode = ShareMode::Both;
  Linkage linkage = Linkage::Average;
  /// Also emit lambda_max / total_volume.
  bool volume_normalized = false;
  /// Keep every replica value in the exported null statistics.
  bool include_lambda_values = false;
  /// Thread cap; never affects results.
  unsigned workers = 1;

  bool operator==(const PipelineConfig &) const = default;
};

struct PeriodResult {
  Period period;
  double lambda_max = 0.0;
  Eigen::VectorXd market_mode;
  NullEnsembleStats lambda_max_shuffled;
  double mean_ipr = 0.0;
  double ipr_lambda_max = 0.0;
  double total_volume = 0.0;
  double density = 0.0;
  std::vector<double> participation;
  std::vector<double> volume_share;

  double gap() const noexcept { return lambda_max - lambda_max_shuffled.mean; }
};

struct PeriodFailure {
  Period period;
  std::string message;

  bool operator==(const PeriodFailure &) const = default;
};

struct TimeSeriesResult {
  std::vector<std::string> entities;
  std::vector<PeriodResult> periods; // strictly increasing
  std::string fingerprint;           // FNV-1a 64 of the canonical flow CSV
  PipelineConfig config;
  std::vector<Period> skipped;          // all-zero matrices
  std::vector<PeriodFailure> failures;

  bool partial() const noexcept { return !failures.empty(); }
};

/// Null-model seed for the period at `index` in the record set roster.
std::uint64_t period_seed(std::uint64_t master_seed, std::size_t index);

/// Full analysis of one period. The null ensemble is seeded with
/// period_seed(config.seed, index of `period`), so the result matches the
/// corresponding entry of run_timeseries.
PeriodResult analyze_period(const FlowRecordSet &records, const Period &period,
                            const PipelineConfig &config);

/// Every period, analyzed concurrently up to `config.workers`. All-zero
/// periods are skipped; other failures are collected. Throws only when no
/// period succeeds.
TimeSeriesResult run_timeseries(const FlowRecordSet &records,
                                const PipelineConfig &config);

std::string fingerprint(const FlowRecordSet &records);

} // namespace rmtnet
