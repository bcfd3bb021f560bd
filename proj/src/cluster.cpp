#include "rmtnet/cluster.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "rmtnet/error.hpp"
#include "rmtnet/export.hpp"

namespace rmtnet {

SymmetricMatrix distance_matrix(const SymmetricMatrix &sym) {
  const auto n = sym.size();
  double s_max = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      s_max = std::max(s_max, sym.values(i, j));
  if (!(s_max > 0.0))
    throw DataError("distance_matrix: all off-diagonal weights are zero");

  SymmetricMatrix d{sym.entities, Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 1.0 - sym.values(i, j) / s_max;
      d.values(i, j) = v;
      d.values(j, i) = v;
    }
  return d;
}

Dendrogram agglomerate(const SymmetricMatrix &distances, Linkage linkage) {
  const auto n = static_cast<int>(distances.size());
  if (n < 2 || distances.values.cols() != n)
    throw DataError("agglomerate: need a square distance matrix with N >= 2");

  struct Cluster {
    int id;
    int size;
    int min_leaf;
    bool active;
  };
  std::vector<Cluster> slots;
  slots.reserve(n);
  for (int i = 0; i < n; ++i)
    slots.push_back({i, 1, i, true});
  Eigen::MatrixXd d = distances.values;

  Dendrogram dend;
  dend.n_leaves = n;
  double last_height = 0.0;
  for (int step = 0; step < n - 1; ++step) {
    int best_a = -1, best_b = -1;
    std::tuple<double, int, int> best{std::numeric_limits<double>::infinity(),
                                      0, 0};
    for (int a = 0; a < n; ++a) {
      if (!slots[a].active)
        continue;
      for (int b = a + 1; b < n; ++b) {
        if (!slots[b].active)
          continue;
        const auto [lo, hi] = std::minmax(slots[a].id, slots[b].id);
        const std::tuple<double, int, int> key{d(a, b), lo, hi};
        if (best_a < 0 || key < best) {
          best = key;
          best_a = a;
          best_b = b;
        }
      }
    }

    auto &ca = slots[best_a];
    auto &cb = slots[best_b];
    // Monotone linkages only undershoot the previous height by rounding.
    const double height = std::max(std::get<0>(best), last_height);
    last_height = height;
    const bool a_left = ca.min_leaf < cb.min_leaf;
    const int new_id = n + step;
    dend.merges.push_back({a_left ? ca.id : cb.id, a_left ? cb.id : ca.id,
                           height, new_id});

    for (int k = 0; k < n; ++k) {
      if (!slots[k].active || k == best_a || k == best_b)
        continue;
      double v = 0.0;
      switch (linkage) {
      case Linkage::Average:
        v = (ca.size * d(best_a, k) + cb.size * d(best_b, k)) /
            (ca.size + cb.size);
        break;
      case Linkage::Single:
        v = std::min(d(best_a, k), d(best_b, k));
        break;
      case Linkage::Complete:
        v = std::max(d(best_a, k), d(best_b, k));
        break;
      }
      d(best_a, k) = v;
      d(k, best_a) = v;
    }
    ca = {new_id, ca.size + cb.size, std::min(ca.min_leaf, cb.min_leaf), true};
    cb.active = false;
  }
  return dend;
}

std::vector<int> leaf_order(const Dendrogram &dend) {
  const int n = dend.n_leaves;
  std::vector<int> order;
  order.reserve(n);
  if (n == 1)
    return {0};
  std::vector<int> stack{dend.root()};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < n) {
      order.push_back(id);
      continue;
    }
    const auto &m = dend.merges.at(static_cast<std::size_t>(id - n));
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
  return order;
}

Eigen::MatrixXd reorder(const Eigen::MatrixXd &matrix,
                        const std::vector<int> &order) {
  const auto n = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = matrix(order[i], order[j]);
  return out;
}

namespace {

std::string newick_label(const std::string &label) {
  std::string out = label;
  for (auto &c : out)
    if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == ' ' ||
        c == '[' || c == ']' || c == '\'')
      c = '_';
  return out;
}

void newick_node(const Dendrogram &dend, const std::vector<std::string> &labels,
                 int id, std::string &out) {
  const int n = dend.n_leaves;
  if (id < n) {
    out += newick_label(labels.at(static_cast<std::size_t>(id)));
    return;
  }
  const auto &m = dend.merges[static_cast<std::size_t>(id - n)];
  const auto height_of = [&](int child) {
    return child < n ? 0.0 : dend.merges[static_cast<std::size_t>(child - n)].height;
  };
  out += '(';
  newick_node(dend, labels, m.left, out);
  out += ':' + format_double(m.height - height_of(m.left)) + ',';
  newick_node(dend, labels, m.right, out);
  out += ':' + format_double(m.height - height_of(m.right)) + ')';
}

} // namespace

std::string to_newick(const Dendrogram &dend,
                      const std::vector<std::string> &labels) {
  if (static_cast<int>(labels.size()) != dend.n_leaves)
    throw DataError("to_newick: label count does not match leaf count");
  std::string out;
  newick_node(dend, labels, dend.root(), out);
  out += ';';
  return out;
}

} // namespace rmtnet
