// quantum_verify.hpp
// Numerical checks on pure states: one-qubit marginals, the momentum map and
// its diagonal part, linear entropy, total variance, the criticality
// eigenproblem residual and the one-qubit polytope inequalities.

#pragma once

#include "qcrit/state_builder.hpp"

#include <Eigen/Core>

#include <vector>

namespace qcrit {

struct Tolerances {
  double equality = 1e-10;
  double solver = 1e-12;
  double residual = 1e-9;
};

/// rho_i in the basis (|0>, |1>).
struct MarginalSet {
  std::vector<Eigen::Matrix2cd> rho;

  int qubits() const { return static_cast<int>(rho.size()); }
};

MarginalSet marginals(const StateVector& state);

/// beta_l = <1|rho_l|1> - 1/2.
Eigen::VectorXd momentum_abelian(const MarginalSet& m);
Eigen::VectorXd momentum_abelian(const StateVector& state);

/// 1 - (1/L) sum_i Tr rho_i^2.
double linear_entropy(const MarginalSet& m);
double linear_entropy(const StateVector& state);

/// 4L - 2 sum_i Tr rho_i^2.
double total_variance(const StateVector& state);

struct CriticalityResidual {
  double residual = 0.0;  // |mu(phi) phi - lambda phi|
  double lambda = 0.0;    // <phi| mu(phi) |phi>
};

CriticalityResidual criticality_residual(const StateVector& state);

/// lambda_i = 1/2 - smallest eigenvalue of rho_i.
std::vector<double> shifted_spectra(const MarginalSet& m);

/// For every i: 1/2 - lambda_i <= sum_{j != i} (1/2 - lambda_j), up to `slack`.
bool polytope_membership(const std::vector<double>& lambdas, double slack = 0.0);

/// Largest |rho_i(0,1)|.
double offdiag_max(const MarginalSet& m);

struct VerificationReport {
  std::vector<double> beta_measured;
  std::vector<double> beta_expected;
  double entropy_measured = 0.0;
  double entropy_expected = 0.0;
  double eigen_residual = 0.0;
  double offdiag_max = 0.0;
  bool pass = false;
};

/// Checks against an expected point. beta_expected is compared to the
/// measured diagonal momentum.
VerificationReport verify_state(const StateVector& state, const Eigen::VectorXd& beta_expected,
                                double entropy_expected, const Tolerances& tol = {});
VerificationReport verify_state(const StateVector& state, const CriticalPoint& point, const Tolerances& tol = {});

/// Checks with no expected point: criticality and diagonal marginals only.
/// The expected fields are filled from the measurement.
VerificationReport verify_state(const StateVector& state, const Tolerances& tol = {});

}  // namespace qcrit
