#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "rmtnet/error.hpp"
#include "rmtnet/ingest.hpp"
#include "rmtnet/nullmodel.hpp"
#include "rmtnet/rng.hpp"
#include "test_support.hpp"

using namespace rmtnet;

namespace {

std::vector<double> positive_sorted(const Eigen::MatrixXd &w) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w.data()[i] > 0.0)
      out.push_back(w.data()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd m2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

} // namespace

TEST_CASE("link-shuffle of a single edge") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = 7.0;
  const auto snap = testing::make_snapshot(w);
  std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = shuffle_snapshot(snap, seed, ShuffleMode::LinkShuffle);
    CHECK(edge_count(s) == 1);
    CHECK(total_volume(s) == 7.0);
    CHECK(s.weights.diagonal().isZero(0.0));
    Eigen::Index i, j;
    s.weights.maxCoeff(&i, &j);
    seen.insert({i, j});
  }
  // All 12 off-diagonal positions are reachable.
  CHECK(seen.size() == 12);
}

TEST_CASE("weight-permute keeps topology") {
  std::mt19937_64 gen(9);
  const auto snap = testing::make_snapshot(testing::random_nonnegative(gen, 6));
  const auto s = shuffle_snapshot(snap, 42, ShuffleMode::WeightPermute);
  CHECK(((s.weights.array() > 0.0) == (snap.weights.array() > 0.0)).all());
  CHECK(positive_sorted(s.weights) == positive_sorted(snap.weights));
  CHECK(s.weights != snap.weights);
}

TEST_CASE("shuffle is seed-deterministic") {
  std::mt19937_64 gen(10);
  const auto snap = testing::make_snapshot(testing::random_nonnegative(gen, 8, 0.6));
  for (auto mode : {ShuffleMode::LinkShuffle, ShuffleMode::WeightPermute}) {
    const auto a = shuffle_snapshot(snap, 5, mode);
    const auto b = shuffle_snapshot(snap, 5, mode);
    const auto c = shuffle_snapshot(snap, 6, mode);
    CHECK(a.weights == b.weights);
    CHECK(a.weights != c.weights);
  }
}

TEST_CASE("shuffle preserves the weight multiset") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 12;
    const auto snap = testing::make_snapshot(testing::random_nonnegative(gen, n, 0.5));
    if (edge_count(snap) == 0)
      continue;
    for (auto mode : {ShuffleMode::LinkShuffle, ShuffleMode::WeightPermute}) {
      const auto s = shuffle_snapshot(snap, static_cast<std::uint64_t>(trial), mode);
      CHECK(positive_sorted(s.weights) == positive_sorted(snap.weights));
      CHECK(edge_count(s) == edge_count(snap));
      CHECK(s.weights.diagonal().isZero(0.0));
      CHECK(s.entities == snap.entities);
      CHECK(s.period == snap.period);
    }
  }
}

TEST_CASE("shuffle rejects an edgeless snapshot") {
  const auto snap = testing::make_snapshot(Eigen::MatrixXd::Zero(3, 3));
  CHECK_THROWS_AS(shuffle_snapshot(snap, 1, ShuffleMode::LinkShuffle), DataError);
}

TEST_CASE("null_ensemble with one sample") {
  std::mt19937_64 gen(14);
  const auto snap = testing::make_snapshot(testing::random_nonnegative(gen, 5));
  const auto stats = null_ensemble(snap, 1, 3);
  CHECK(stats.n_samples == 1);
  CHECK(stats.lambda_values.size() == 1);
  CHECK(stats.std == 0.0);
  CHECK(stats.mean == stats.lambda_values[0]);
  CHECK(stats.q01 == stats.q99);
  CHECK_THROWS_AS(null_ensemble(snap, 0, 3), ConfigError);
}

TEST_CASE("null_ensemble on the 2x2 example is degenerate") {
  // Both placements, [[0,3],[5,0]] and [[0,5],[3,0]], have λ² = 15.
  const auto stats = null_ensemble(testing::make_snapshot(m2(0, 3, 5, 0)), 50, 1);
  for (double l : stats.lambda_values)
    CHECK(std::abs(l - std::sqrt(15.0)) <= 1e-12);
  CHECK(stats.std <= 1e-12);
  CHECK(std::abs(stats.mean - std::sqrt(15.0)) <= 1e-12);
}

TEST_CASE("null_ensemble is reproducible and worker independent") {
  std::mt19937_64 gen(15);
  const auto snap = testing::make_snapshot(testing::random_nonnegative(gen, 10, 0.5));
  const auto a = null_ensemble(snap, 40, 77, {ShuffleMode::LinkShuffle, SpectrumMode::DirectedPerron, 1});
  const auto b = null_ensemble(snap, 40, 77, {ShuffleMode::LinkShuffle, SpectrumMode::DirectedPerron, 4});
  CHECK(a.lambda_values == b.lambda_values);
  CHECK(a.mean == b.mean);
  CHECK(a.q99 == b.q99);
  // Replica k depends only on (seed, k).
  const auto prefix = null_ensemble(snap, 10, 77);
  CHECK(std::equal(prefix.lambda_values.begin(), prefix.lambda_values.end(),
                   a.lambda_values.begin()));
}

TEST_CASE("summarize statistics") {
  NullEnsembleStats s;
  s.lambda_values = {4.0, 1.0, 3.0, 2.0, 5.0};
  summarize(s);
  CHECK(s.n_samples == 5);
  CHECK(s.mean == 3.0);
  CHECK(s.std == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.q50 == 3.0);
  CHECK(s.q01 == doctest::Approx(1.04));
  CHECK(s.q99 == doctest::Approx(4.96));
}

TEST_CASE("core-periphery network beats its null") {
  SyntheticParams p;
  p.n_core = 5;
  p.n_periphery = 15;
  p.link_prob_pp = 0.1;
  p.seed = 4;
  const auto set = generate_synthetic(p);
  const auto snap = build_snapshot(set, p.period);
  const double real = leading_eigenpair(snap).lambda;
  const auto stats = null_ensemble(snap, 200, 8);
  CHECK(real > stats.q99);
}

TEST_CASE("symmetrized null uses the top symmetric eigenvalue") {
  std::mt19937_64 gen(16);
  const auto snap = testing::make_snapshot(testing::random_nonnegative(gen, 6));
  const auto stats = null_ensemble(snap, 5, 2, {ShuffleMode::WeightPermute, SpectrumMode::Symmetrized, 1});
  for (std::size_t k = 0; k < 5; ++k) {
    const auto replica = shuffle_snapshot(snap, derive_seed(2, k), ShuffleMode::WeightPermute);
    CHECK(stats.lambda_values[k] == full_spectrum(symmetrize(replica)).lambda_max);
  }
}
