#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rmtnet/network.hpp"

namespace rmtnet {

enum class SpectrumMode { DirectedPerron, Symmetrized };

struct PowerIterationOptions {
  double lambda_rtol = 1e-12;
  double residual_rtol = 1e-8;
  int max_iterations = 100000;
};

struct LeadingEigenpair {
  double lambda = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0; // ‖A·v − λ·v‖₂
  int iterations = 0;
};

/// Perron root and nonnegative unit Perron vector of a nonnegative matrix.
///
/// Power iteration on the shifted operator A + σI with σ tracking the
/// current eigenvalue estimate, starting from the uniform vector. The shift
/// makes the Perron root strictly dominant even for periodic matrices such
/// as [[0,a],[b,0]], where the plain iteration oscillates.
///
/// A nonzero matrix whose support graph has no cycle is nilpotent; it gets
/// λ = 0 and a vector spread uniformly over the entities with no incoming
/// weight, which A maps to zero.
///
/// Throws DataError for a zero or negative matrix and NumericalError (with
/// the achieved residual) if the iteration cap is hit.
LeadingEigenpair leading_eigenpair(const Eigen::MatrixXd &matrix,
                                   const PowerIterationOptions &options = {});
LeadingEigenpair leading_eigenpair(const NetworkSnapshot &snapshot,
                                   const PowerIterationOptions &options = {});

struct SpectralSummary {
  SpectrumMode mode = SpectrumMode::Symmetrized;
  std::vector<double> eigenvalues; // descending
  std::vector<Eigen::VectorXd> eigenvectors;
  std::vector<double> iprs;
  double lambda_max = 0.0;
  Eigen::VectorXd market_mode;
};

/// Full spectrum of a symmetric matrix, eigenvalues descending. Each
/// eigenvector has its largest-magnitude component positive (first such
/// index on ties).
SpectralSummary full_spectrum(const SymmetricMatrix &sym);

/// Single-vector summary for the directed Perron pair.
SpectralSummary directed_summary(const LeadingEigenpair &pair);

/// Inverse participation ratio 1 / Σ v_l⁴ of a unit vector. Throws
/// DataError if ‖v‖₂ differs from 1 by more than 1e-10.
double ipr(const Eigen::VectorXd &v);

/// Mean IPR over all eigenvectors of a symmetrized summary.
double mean_ipr(const SpectralSummary &summary);

/// v_i² × 100 for a unit vector.
std::vector<double> participation_percent(const Eigen::VectorXd &v);

/// Flip the sign so the largest-magnitude component is positive.
void fix_sign(Eigen::VectorXd &v);

} // namespace rmtnet
