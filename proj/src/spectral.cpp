#include "rmtnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rmtnet/error.hpp"

namespace rmtnet {

namespace {

// Kahn's algorithm on the support graph; diagonal entries count as cycles.
bool support_has_cycle(const Eigen::MatrixXd &a) {
  const auto n = a.rows();
  std::vector<Eigen::Index> indegree(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(i, j) != 0.0)
        ++indegree[j];
  std::vector<Eigen::Index> ready;
  for (Eigen::Index j = 0; j < n; ++j)
    if (indegree[j] == 0)
      ready.push_back(j);
  Eigen::Index removed = 0;
  while (!ready.empty()) {
    const auto i = ready.back();
    ready.pop_back();
    ++removed;
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(i, j) != 0.0 && --indegree[j] == 0)
        ready.push_back(j);
  }
  return removed < n;
}

LeadingEigenpair nilpotent_pair(const Eigen::MatrixXd &a) {
  const auto n = a.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    if ((a.col(j).array() == 0.0).all())
      v(j) = 1.0;
  v /= v.norm();
  return {0.0, v, (a * v).norm(), 0};
}

} // namespace

LeadingEigenpair leading_eigenpair(const Eigen::MatrixXd &a,
                                   const PowerIterationOptions &options) {
  const auto n = a.rows();
  if (n < 1 || a.cols() != n)
    throw DataError("leading_eigenpair: matrix must be square and nonempty");
  if (!a.allFinite() || (a.array() < 0.0).any())
    throw DataError("leading_eigenpair: matrix must be finite and nonnegative");
  if ((a.array() == 0.0).all())
    throw DataError("leading_eigenpair: zero matrix has no Perron vector");
  if (!support_has_cycle(a))
    return nilpotent_pair(a);

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd av(n);
  double lambda_prev = -1.0;
  double residual = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    av.noalias() = a * v;
    // Rayleigh quotient: the λ minimizing ‖A·v − λ·v‖ for this v.
    const double lambda = v.dot(av);
    residual = (av - lambda * v).norm();
    if (std::abs(lambda - lambda_prev) <= options.lambda_rtol * lambda &&
        residual <= options.residual_rtol * lambda)
      return {lambda, v, residual, it};
    lambda_prev = lambda;

    // Shifted step with A + λI; keeps v nonnegative.
    v = av + lambda * v;
    v /= v.norm();
  }
  std::ostringstream msg;
  msg << "power iteration did not converge after " << options.max_iterations
      << " iterations (residual " << residual << ", lambda " << lambda_prev
      << ")";
  throw NumericalError(msg.str());
}

LeadingEigenpair leading_eigenpair(const NetworkSnapshot &snapshot,
                                   const PowerIterationOptions &options) {
  try {
    return leading_eigenpair(snapshot.weights, options);
  } catch (const NumericalError &e) {
    throw NumericalError(snapshot.period.str() + ": " + e.what());
  } catch (const DataError &e) {
    throw DataError(snapshot.period.str() + ": " + e.what());
  }
}

void fix_sign(Eigen::VectorXd &v) {
  if (v.size() == 0)
    return;
  const double max_abs = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= max_abs * (1.0 - 1e-12)) {
      if (v(i) < 0.0)
        v = -v;
      return;
    }
  }
}

SpectralSummary full_spectrum(const SymmetricMatrix &sym) {
  const auto &m = sym.values;
  const auto n = m.rows();
  if (n < 1 || m.cols() != n)
    throw DataError("full_spectrum: matrix must be square and nonempty");
  if (m != m.transpose())
    throw DataError("full_spectrum: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver failed");

  SpectralSummary s;
  s.mode = SpectrumMode::Symmetrized;
  s.eigenvalues.reserve(n);
  s.eigenvectors.reserve(n);
  s.iprs.reserve(n);
  // Eigen returns ascending order.
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    fix_sign(v);
    s.eigenvalues.push_back(solver.eigenvalues()(k));
    s.iprs.push_back(ipr(v));
    s.eigenvectors.push_back(std::move(v));
  }
  s.lambda_max = s.eigenvalues.front();
  s.market_mode = s.eigenvectors.front();
  return s;
}

SpectralSummary directed_summary(const LeadingEigenpair &pair) {
  SpectralSummary s;
  s.mode = SpectrumMode::DirectedPerron;
  s.eigenvalues = {pair.lambda};
  s.eigenvectors = {pair.vector};
  s.iprs = {ipr(pair.vector)};
  s.lambda_max = pair.lambda;
  s.market_mode = pair.vector;
  return s;
}

double ipr(const Eigen::VectorXd &v) {
  if (v.size() == 0)
    throw DataError("ipr: empty vector");
  const double norm = v.norm();
  if (!(std::abs(norm - 1.0) <= 1e-10)) {
    std::ostringstream msg;
    msg << "ipr: vector is not unit-normalized (norm " << norm << ")";
    throw DataError(msg.str());
  }
  return 1.0 / v.array().square().square().sum();
}

double mean_ipr(const SpectralSummary &summary) {
  if (summary.mode != SpectrumMode::Symmetrized)
    throw DataError("mean_ipr needs the full symmetrized spectrum");
  if (summary.iprs.empty())
    throw DataError("mean_ipr: empty spectrum");
  return std::accumulate(summary.iprs.begin(), summary.iprs.end(), 0.0) /
         static_cast<double>(summary.iprs.size());
}

std::vector<double> participation_percent(const Eigen::VectorXd &v) {
  std::vector<double> p(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    p[i] = v(i) * v(i) * 100.0;
  return p;
}

} // namespace rmtnet
