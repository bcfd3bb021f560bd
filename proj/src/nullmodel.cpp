#include "rmtnet/nullmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"
#include "rmtnet/error.hpp"
#include "rmtnet/rng.hpp"

namespace rmtnet {

NetworkSnapshot shuffle_snapshot(const NetworkSnapshot &snapshot,
                                 std::uint64_t seed, ShuffleMode mode) {
  const auto n = snapshot.size();
  const auto &a = snapshot.weights;

  // Off-diagonal position k maps to row k / (n-1); the column skips i.
  std::vector<std::uint64_t> positions;
  std::vector<double> weights;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && a(i, j) != 0.0) {
        positions.push_back(static_cast<std::uint64_t>(i * (n - 1) +
                                                       (j < i ? j : j - 1)));
        weights.push_back(a(i, j));
      }
  const auto edges = weights.size();
  const auto slots = static_cast<std::uint64_t>(n) * (n - 1);
  if (edges == 0)
    throw DataError("shuffle: snapshot " + snapshot.period.str() +
                    " has no edges");
  if (edges > slots)
    throw DataError("shuffle: more edges than off-diagonal positions");

  Rng rng(seed);
  switch (mode) {
  case ShuffleMode::LinkShuffle: {
    // Partial Fisher-Yates: the first `edges` slots form a uniform random
    // ordered sample of distinct positions.
    std::vector<std::uint64_t> space(slots);
    std::iota(space.begin(), space.end(), std::uint64_t{0});
    for (std::size_t k = 0; k < edges; ++k) {
      const auto pick = k + rng.below(slots - k);
      std::swap(space[k], space[pick]);
    }
    positions.assign(space.begin(), space.begin() + edges);
    break;
  }
  case ShuffleMode::WeightPermute:
    for (std::size_t k = edges - 1; k > 0; --k)
      std::swap(weights[k], weights[rng.below(k + 1)]);
    break;
  default:
    throw ConfigError("shuffle: invalid mode");
  }

  NetworkSnapshot out{snapshot.period, snapshot.entities,
                      Eigen::MatrixXd::Zero(n, n)};
  for (std::size_t k = 0; k < edges; ++k) {
    const auto i = static_cast<Eigen::Index>(positions[k] / (n - 1));
    const auto r = static_cast<Eigen::Index>(positions[k] % (n - 1));
    out.weights(i, r < i ? r : r + 1) = weights[k];
  }
  return out;
}

double quantile_sorted(const std::vector<double> &sorted, double q) {
  if (sorted.empty())
    return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void summarize(NullEnsembleStats &stats) {
  stats.n_samples = stats.lambda_values.size();
  if (stats.lambda_values.empty()) {
    stats.mean = stats.std = stats.q01 = stats.q50 = stats.q99 = 0.0;
    return;
  }
  // Statistics come from the sorted list so they ignore replica order.
  auto sorted = stats.lambda_values;
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  stats.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / count;
  double ss = 0.0;
  for (double x : sorted)
    ss += (x - stats.mean) * (x - stats.mean);
  stats.std = std::sqrt(ss / count);
  stats.q01 = quantile_sorted(sorted, 0.01);
  stats.q50 = quantile_sorted(sorted, 0.50);
  stats.q99 = quantile_sorted(sorted, 0.99);
}

NullEnsembleStats null_ensemble(const NetworkSnapshot &snapshot,
                                std::size_t n_samples, std::uint64_t seed,
                                const NullEnsembleOptions &options) {
  if (n_samples < 1)
    throw ConfigError("null_ensemble: n_samples must be at least 1");

  NullEnsembleStats stats;
  stats.seed = seed;
  stats.mode = options.mode;
  stats.lambda_values.assign(n_samples, 0.0);

  detail::parallel_for(n_samples, options.workers, [&](std::size_t k) {
    const auto replica = shuffle_snapshot(snapshot, derive_seed(seed, k),
                                          options.mode);
    try {
      stats.lambda_values[k] =
          options.spectrum == SpectrumMode::DirectedPerron
              ? leading_eigenpair(replica.weights).lambda
              : full_spectrum(symmetrize(replica)).lambda_max;
    } catch (const NumericalError &e) {
      throw NumericalError("null replica " + std::to_string(k) + " of " +
                           snapshot.period.str() + ": " + e.what());
    }
  });
  summarize(stats);
  return stats;
}

} // namespace rmtnet
