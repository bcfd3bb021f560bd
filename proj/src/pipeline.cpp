#include "rmtnet/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "parallel.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/rng.hpp"

namespace rmtnet {

namespace {

std::size_t period_index(const FlowRecordSet &records, const Period &period) {
  const auto &periods = records.periods();
  const auto it = std::lower_bound(periods.begin(), periods.end(), period);
  if (it == periods.end() || *it != period)
    throw DataError("unknown period " + period.str());
  return static_cast<std::size_t>(it - periods.begin());
}

[[noreturn]] void rethrow_with_context(const Error &e, const Period &period) {
  const std::string what = period.str() + ": " + e.what();
  switch (e.kind()) {
  case ErrorKind::Data:
    throw DataError(what);
  case ErrorKind::Numerical:
    throw NumericalError(what);
  case ErrorKind::Config:
    throw ConfigError(what);
  case ErrorKind::Io:
    throw IoError(what);
  }
  throw DataError(what);
}

PeriodResult analyze_snapshot(const NetworkSnapshot &snap, std::uint64_t seed,
                              const PipelineConfig &config, unsigned workers) {
  PeriodResult r;
  r.period = snap.period;
  const auto spectrum = full_spectrum(symmetrize(snap));
  if (config.spectrum_mode == SpectrumMode::DirectedPerron) {
    auto pair = leading_eigenpair(snap.weights);
    r.lambda_max = pair.lambda;
    r.market_mode = std::move(pair.vector);
  } else {
    r.lambda_max = spectrum.lambda_max;
    r.market_mode = spectrum.market_mode;
  }
  r.mean_ipr = mean_ipr(spectrum);
  r.ipr_lambda_max = ipr(r.market_mode);
  r.lambda_max_shuffled =
      null_ensemble(snap, config.null_samples, seed,
                    {config.null_mode, config.spectrum_mode, workers});
  r.total_volume = total_volume(snap);
  r.density = density(snap);
  r.participation = participation_percent(r.market_mode);
  r.volume_share = volume_share(snap, config.share_mode);
  return r;
}

} // namespace

std::uint64_t period_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

PeriodResult analyze_period(const FlowRecordSet &records, const Period &period,
                            const PipelineConfig &config) {
  const auto index = period_index(records, period);
  try {
    const auto snap = build_snapshot(records, period);
    if (!(total_volume(snap) > 0.0))
      throw DataError("all-zero weight matrix");
    return analyze_snapshot(snap, period_seed(config.seed, index), config,
                            config.workers);
  } catch (const Error &e) {
    rethrow_with_context(e, period);
  }
}

TimeSeriesResult run_timeseries(const FlowRecordSet &records,
                                const PipelineConfig &config) {
  const auto &periods = records.periods();
  if (periods.empty())
    throw DataError("dataset has no periods");

  enum class Outcome { Ok, Skipped, Failed };
  struct Slot {
    Outcome outcome = Outcome::Failed;
    std::optional<PeriodResult> result;
    std::string message;
    ErrorKind kind = ErrorKind::Data;
  };
  std::vector<Slot> slots(periods.size());

  // Periods run in parallel; replicas inside a period stay sequential.
  detail::parallel_for(periods.size(), config.workers, [&](std::size_t i) {
    auto &slot = slots[i];
    try {
      const auto snap = build_snapshot(records, periods[i]);
      if (!(total_volume(snap) > 0.0)) {
        slot.outcome = Outcome::Skipped;
        return;
      }
      slot.result = analyze_snapshot(snap, period_seed(config.seed, i), config, 1);
      slot.outcome = Outcome::Ok;
    } catch (const Error &e) {
      slot.message = e.what();
      slot.kind = e.kind();
    } catch (const std::exception &e) {
      slot.message = e.what();
    }
  });

  TimeSeriesResult out;
  out.entities = records.entities();
  out.fingerprint = fingerprint(records);
  out.config = config;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    auto &slot = slots[i];
    switch (slot.outcome) {
    case Outcome::Ok:
      out.periods.push_back(std::move(*slot.result));
      break;
    case Outcome::Skipped:
      out.skipped.push_back(periods[i]);
      break;
    case Outcome::Failed:
      out.failures.push_back({periods[i], slot.message});
      break;
    }
  }
  if (out.periods.empty()) {
    std::string what = "no period could be analyzed";
    if (!out.failures.empty()) {
      what += "; first failure " + out.failures.front().period.str() + ": " +
              out.failures.front().message;
      const auto first = std::find_if(slots.begin(), slots.end(), [](auto &s) {
        return s.outcome == Outcome::Failed;
      });
      if (first->kind == ErrorKind::Numerical)
        throw NumericalError(what);
    }
    throw DataError(what);
  }
  return out;
}

std::string fingerprint(const FlowRecordSet &records) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_flow_csv(records)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace rmtnet
