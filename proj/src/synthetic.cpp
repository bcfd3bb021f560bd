#include <algorithm>
#include <string>

#include "rmtnet/error.hpp"
#include "rmtnet/ingest.hpp"
#include "rmtnet/rng.hpp"

namespace rmtnet {

namespace {

std::string entity_code(char prefix, int index, int width) {
  auto digits = std::to_string(index + 1);
  if (static_cast<int>(digits.size()) < width)
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}

int digits(int n) {
  int d = 2;
  for (int limit = 100; n >= limit; limit *= 10)
    ++d;
  return d;
}

void check(const SyntheticParams &p) {
  if (p.n_core < 1 || p.n_periphery < 0)
    throw ConfigError("synthetic: need n_core >= 1 and n_periphery >= 0");
  if (p.n_core + p.n_periphery < 2)
    throw ConfigError("synthetic: need at least 2 entities");
  if (!(p.core_weight_scale > 0.0) || !(p.periphery_weight_scale > 0.0))
    throw ConfigError("synthetic: weight scales must be positive");
  if (!(p.link_prob_pp >= 0.0 && p.link_prob_pp <= 1.0))
    throw ConfigError("synthetic: link_prob_pp must lie in [0, 1]");
}

void append_period(const SyntheticParams &p, std::vector<FlowRecord> &out) {
  const int n = p.n_core + p.n_periphery;
  const int width = digits(std::max(p.n_core, p.n_periphery));
  std::vector<std::string> codes;
  codes.reserve(n);
  for (int i = 0; i < p.n_core; ++i)
    codes.push_back(entity_code('C', i, width));
  for (int i = 0; i < p.n_periphery; ++i)
    codes.push_back(entity_code('P', i, width));

  Rng rng(p.seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j)
        continue;
      const bool core_i = i < p.n_core;
      const bool core_j = j < p.n_core;
      double amount;
      if (core_i && core_j) {
        amount = rng.uniform_open_closed() * p.core_weight_scale;
      } else if (core_i || core_j) {
        amount = rng.uniform_open_closed() * p.periphery_weight_scale;
      } else {
        if (!rng.bernoulli(p.link_prob_pp))
          continue;
        amount = rng.uniform_open_closed() * p.periphery_weight_scale;
      }
      out.push_back(FlowRecord{p.period, codes[i], codes[j], amount});
    }
  }
}

} // namespace

FlowRecordSet generate_synthetic(const SyntheticParams &params) {
  check(params);
  std::vector<FlowRecord> records;
  append_period(params, records);
  return FlowRecordSet(std::move(records));
}

FlowRecordSet generate_synthetic_series(const SyntheticSeriesParams &params) {
  check(params.base);
  if (params.n_periods < 1)
    throw ConfigError("synthetic: need at least one period");
  if (!(params.link_prob_pp_end >= 0.0 && params.link_prob_pp_end <= 1.0))
    throw ConfigError("synthetic: link_prob_pp_end must lie in [0, 1]");
  if (!(params.weight_growth > 0.0))
    throw ConfigError("synthetic: weight_growth must be positive");

  std::vector<FlowRecord> records;
  SyntheticParams p = params.base;
  double scale = 1.0;
  for (int t = 0; t < params.n_periods; ++t) {
    const double frac =
        params.n_periods > 1 ? static_cast<double>(t) / (params.n_periods - 1)
                             : 0.0;
    p.link_prob_pp = params.base.link_prob_pp +
                     frac * (params.link_prob_pp_end - params.base.link_prob_pp);
    p.core_weight_scale = params.base.core_weight_scale * scale;
    p.periphery_weight_scale = params.base.periphery_weight_scale * scale;
    p.seed = derive_seed(params.base.seed, static_cast<std::uint64_t>(t));
    append_period(p, records);
    p.period = p.period.next();
    scale *= params.weight_growth;
  }
  return FlowRecordSet(std::move(records));
}

} // namespace rmtnet
