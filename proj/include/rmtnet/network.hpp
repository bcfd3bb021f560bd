#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmtnet/ingest.hpp"
#include "rmtnet/period.hpp"

namespace rmtnet {

/// Weighted directed adjacency matrix for one period.
///
/// `weights(i, j)` is the total amount lent by entity i to entity j. The
/// entity list is the global roster of the record set, so snapshots from
/// different periods share one index.
struct NetworkSnapshot {
  Period period;
  std::vector<std::string> entities;
  Eigen::MatrixXd weights;

  Eigen::Index size() const noexcept { return weights.rows(); }

  /// Throws DataError unless entries are finite and nonnegative, the diagonal
  /// is zero, N >= 2 and the entity list is unique and sorted.
  void validate() const;
};

/// Symmetric real matrix with entity labels; also used for distances.
struct SymmetricMatrix {
  std::vector<std::string> entities;
  Eigen::MatrixXd values;

  Eigen::Index size() const noexcept { return values.rows(); }
};

NetworkSnapshot build_snapshot(const FlowRecordSet &records,
                               const Period &period);

/// (A + Aᵀ) / 2, written so that both triangles are bitwise equal.
SymmetricMatrix symmetrize(const NetworkSnapshot &snapshot);

double total_volume(const NetworkSnapshot &snapshot);

/// Nonzero off-diagonal entries over N(N-1).
double density(const NetworkSnapshot &snapshot);

/// Number of nonzero off-diagonal entries.
Eigen::Index edge_count(const NetworkSnapshot &snapshot);

enum class ShareMode { Both, Out, In };

/// Percentage of total volume attributed to each entity. `Both` halves the
/// sum of lending and borrowing so shares add up to 100.
std::vector<double> volume_share(const NetworkSnapshot &snapshot,
                                 ShareMode mode = ShareMode::Both);

/// DOT digraph; one edge per nonzero entry with a `weight` attribute.
void write_dot(std::ostream &out, const NetworkSnapshot &snapshot);

} // namespace rmtnet
