#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rmtnet/network.hpp"

namespace rmtnet {

enum class Linkage { Average, Single, Complete };

struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
  int id = 0;

  bool operator==(const Merge &) const = default;
};

/// Binary merge tree over N leaves. Leaves are 0..N-1, merge k creates
/// node N+k.
struct Dendrogram {
  int n_leaves = 0;
  std::vector<Merge> merges;

  int root() const noexcept { return 2 * n_leaves - 2; }
};

/// d(i,j) = 1 − s(i,j)/s_max over off-diagonal entries; zero diagonal.
SymmetricMatrix distance_matrix(const SymmetricMatrix &sym);

/// Agglomerative clustering. Each step merges the active pair with the
/// smallest linkage distance; ties go to the smallest (lower id, higher id)
/// pair. The child holding the smaller leaf index becomes `left`. Heights
/// are clamped to be non-decreasing, which only ever moves them by rounding
/// error for the supported (monotone) linkages.
Dendrogram agglomerate(const SymmetricMatrix &distances,
                       Linkage linkage = Linkage::Average);

/// Leaves in left-first traversal order.
std::vector<int> leaf_order(const Dendrogram &dendrogram);

/// Rows and columns of `matrix` permuted by `order`.
Eigen::MatrixXd reorder(const Eigen::MatrixXd &matrix,
                        const std::vector<int> &order);

/// Newick string; branch lengths are height differences to the parent.
std::string to_newick(const Dendrogram &dendrogram,
                      const std::vector<std::string> &labels);

} // namespace rmtnet
