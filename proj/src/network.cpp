#include "rmtnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <unordered_map>

#include "rmtnet/error.hpp"
#include "rmtnet/export.hpp"

namespace rmtnet {

void NetworkSnapshot::validate() const {
  const auto n = weights.rows();
  if (weights.cols() != n)
    throw DataError("weight matrix is not square");
  if (n < 2)
    throw DataError("snapshot needs at least 2 entities");
  if (static_cast<Eigen::Index>(entities.size()) != n)
    throw DataError("entity list does not match matrix size");
  if (std::adjacent_find(entities.begin(), entities.end(),
                         std::greater_equal<>()) != entities.end())
    throw DataError("entities must be unique and sorted");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights(i, i) != 0.0)
      throw DataError("nonzero diagonal entry for " + entities[i]);
    for (Eigen::Index j = 0; j < n; ++j)
      if (!std::isfinite(weights(i, j)) || weights(i, j) < 0.0)
        throw DataError("negative or non-finite weight " + entities[i] +
                        " -> " + entities[j]);
  }
}

NetworkSnapshot build_snapshot(const FlowRecordSet &records,
                               const Period &period) {
  if (!records.has_period(period))
    throw DataError("unknown period " + period.str());
  const auto &roster = records.entities();
  const auto n = static_cast<Eigen::Index>(roster.size());
  if (n < 2)
    throw DataError("snapshot needs at least 2 entities");

  std::unordered_map<std::string_view, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i)
    index.emplace(roster[i], i);

  NetworkSnapshot s{period, roster, Eigen::MatrixXd::Zero(n, n)};
  for (const auto &r : records.records())
    if (r.period == period)
      s.weights(index.at(r.reporter), index.at(r.counterparty)) += r.amount;
  return s;
}

SymmetricMatrix symmetrize(const NetworkSnapshot &snapshot) {
  const auto n = snapshot.size();
  SymmetricMatrix sym{snapshot.entities, Eigen::MatrixXd::Zero(n, n)};
  const auto &a = snapshot.weights;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (a(i, j) + a(j, i)) / 2.0;
      sym.values(i, j) = v;
      sym.values(j, i) = v;
    }
  return sym;
}

double total_volume(const NetworkSnapshot &snapshot) {
  return snapshot.weights.sum();
}

Eigen::Index edge_count(const NetworkSnapshot &snapshot) {
  Eigen::Index count = 0;
  const auto n = snapshot.size();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && snapshot.weights(i, j) != 0.0)
        ++count;
  return count;
}

double density(const NetworkSnapshot &snapshot) {
  const auto n = static_cast<double>(snapshot.size());
  return static_cast<double>(edge_count(snapshot)) / (n * (n - 1.0));
}

std::vector<double> volume_share(const NetworkSnapshot &snapshot,
                                 ShareMode mode) {
  const double total = total_volume(snapshot);
  if (!(total > 0.0))
    throw DataError("volume share undefined for zero total volume (" +
                    snapshot.period.str() + ")");
  const Eigen::VectorXd out = snapshot.weights.rowwise().sum();
  const Eigen::VectorXd in = snapshot.weights.colwise().sum().transpose();
  std::vector<double> share(static_cast<std::size_t>(snapshot.size()));
  for (Eigen::Index j = 0; j < snapshot.size(); ++j) {
    switch (mode) {
    case ShareMode::Both:
      share[j] = (out(j) + in(j)) / (2.0 * total) * 100.0;
      break;
    case ShareMode::Out:
      share[j] = out(j) / total * 100.0;
      break;
    case ShareMode::In:
      share[j] = in(j) / total * 100.0;
      break;
    }
  }
  return share;
}

void write_dot(std::ostream &out, const NetworkSnapshot &snapshot) {
  out << "digraph \"" << snapshot.period.str() << "\" {\n";
  for (const auto &e : snapshot.entities)
    out << "  \"" << e << "\";\n";
  const auto n = snapshot.size();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (snapshot.weights(i, j) != 0.0)
        out << "  \"" << snapshot.entities[i] << "\" -> \""
            << snapshot.entities[j]
            << "\" [weight=" << format_double(snapshot.weights(i, j)) << "];\n";
  out << "}\n";
}

} // namespace rmtnet
