#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rmtnet/network.hpp"
#include "rmtnet/spectral.hpp"

namespace rmtnet {

enum class ShuffleMode {
  /// Reassign the weight multiset to uniformly chosen distinct off-diagonal
  /// positions.
  LinkShuffle,
  /// Permute weights among the existing edge positions.
  WeightPermute,
};

/// Random surrogate with the same multiset of positive weights.
NetworkSnapshot shuffle_snapshot(const NetworkSnapshot &snapshot,
                                 std::uint64_t seed, ShuffleMode mode);

struct NullEnsembleStats {
  std::size_t n_samples = 0;
  std::vector<double> lambda_values; // replica order
  double mean = 0.0;
  double std = 0.0; // population standard deviation
  double q01 = 0.0;
  double q50 = 0.0;
  double q99 = 0.0;
  std::uint64_t seed = 0;
  ShuffleMode mode = ShuffleMode::LinkShuffle;
};

struct NullEnsembleOptions {
  ShuffleMode mode = ShuffleMode::LinkShuffle;
  SpectrumMode spectrum = SpectrumMode::DirectedPerron;
  unsigned workers = 1;
};

/// λ_max over `n_samples` shuffled replicas; replica k uses
/// derive_seed(seed, k). Results do not depend on `workers`.
NullEnsembleStats null_ensemble(const NetworkSnapshot &snapshot,
                                std::size_t n_samples, std::uint64_t seed,
                                const NullEnsembleOptions &options = {});

/// Fills mean/std/quantiles from `lambda_values`.
void summarize(NullEnsembleStats &stats);

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile_sorted(const std::vector<double> &sorted, double q);

} // namespace rmtnet
