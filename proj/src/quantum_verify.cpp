#include "qcrit/quantum_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcrit {

namespace {

void check_state(const StateVector& state) {
  if (state.amplitudes.size() != (Eigen::Index{1} << state.qubits))
    throw std::invalid_argument("amplitude count does not match qubit count");
}

}  // namespace

MarginalSet marginals(const StateVector& state) {
  check_state(state);
  const int n = state.qubits;
  const auto& psi = state.amplitudes;
  MarginalSet out;
  out.rho.assign(static_cast<std::size_t>(n), Eigen::Matrix2cd::Zero());
  for (int q = 0; q < n; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
    auto& r = out.rho[static_cast<std::size_t>(q)];
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
      if (x & mask) continue;
      const auto a0 = psi(x);
      const auto a1 = psi(x | mask);
      r(0, 0) += std::norm(a0);
      r(1, 1) += std::norm(a1);
      r(0, 1) += a0 * std::conj(a1);
    }
    r(1, 0) = std::conj(r(0, 1));
  }
  return out;
}

Eigen::VectorXd momentum_abelian(const MarginalSet& m) {
  Eigen::VectorXd beta(m.qubits());
  for (int i = 0; i < m.qubits(); ++i) beta(i) = m.rho[static_cast<std::size_t>(i)](1, 1).real() - 0.5;
  return beta;
}

Eigen::VectorXd momentum_abelian(const StateVector& state) { return momentum_abelian(marginals(state)); }

namespace {

double purity_sum(const MarginalSet& m) {
  double s = 0.0;
  for (const auto& r : m.rho) s += (r * r).trace().real();
  return s;
}

}  // namespace

double linear_entropy(const MarginalSet& m) { return 1.0 - purity_sum(m) / m.qubits(); }

double linear_entropy(const StateVector& state) { return linear_entropy(marginals(state)); }

double total_variance(const StateVector& state) {
  const auto m = marginals(state);
  return 4.0 * m.qubits() - 2.0 * purity_sum(m);
}

CriticalityResidual criticality_residual(const StateVector& state) {
  const auto m = marginals(state);
  const int n = state.qubits;
  const auto& psi = state.amplitudes;
  Amplitudes out = Amplitudes::Zero(psi.size());
  for (int q = 0; q < n; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
    const Eigen::Matrix2cd op = m.rho[static_cast<std::size_t>(q)] - 0.5 * Eigen::Matrix2cd::Identity();
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
      if (x & mask) continue;
      const auto a0 = psi(x);
      const auto a1 = psi(x | mask);
      out(x) += op(0, 0) * a0 + op(0, 1) * a1;
      out(x | mask) += op(1, 0) * a0 + op(1, 1) * a1;
    }
  }
  CriticalityResidual r;
  r.lambda = psi.dot(out).real();  // dot() conjugates the first argument
  r.residual = (out - r.lambda * psi).norm();
  return r;
}

std::vector<double> shifted_spectra(const MarginalSet& m) {
  std::vector<double> out;
  out.reserve(m.rho.size());
  for (const auto& r : m.rho) {
    const double tr = r.trace().real();
    const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    out.push_back(0.5 - (tr / 2.0 - disc));
  }
  return out;
}

bool polytope_membership(const std::vector<double>& lambdas, double slack) {
  const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0,
                                       [](double acc, double l) { return acc + (0.5 - l); });
  return std::all_of(lambdas.begin(), lambdas.end(), [&](double l) {
    const double own = 0.5 - l;
    return own <= total - own + slack;
  });
}

double offdiag_max(const MarginalSet& m) {
  double best = 0.0;
  for (const auto& r : m.rho) best = std::max(best, std::abs(r(0, 1)));
  return best;
}

namespace {

VerificationReport measure(const StateVector& state) {
  const auto m = marginals(state);
  VerificationReport rep;
  const auto beta = momentum_abelian(m);
  rep.beta_measured.assign(beta.data(), beta.data() + beta.size());
  rep.entropy_measured = linear_entropy(m);
  rep.eigen_residual = criticality_residual(state).residual;
  rep.offdiag_max = offdiag_max(m);
  return rep;
}

}  // namespace

VerificationReport verify_state(const StateVector& state, const Eigen::VectorXd& beta_expected,
                                double entropy_expected, const Tolerances& tol) {
  if (beta_expected.size() != state.qubits) throw std::invalid_argument("expected beta has the wrong length");
  auto rep = measure(state);
  rep.beta_expected.assign(beta_expected.data(), beta_expected.data() + beta_expected.size());
  rep.entropy_expected = entropy_expected;
  double beta_error = 0.0;
  for (std::size_t i = 0; i < rep.beta_measured.size(); ++i)
    beta_error = std::max(beta_error, std::abs(rep.beta_measured[i] - rep.beta_expected[i]));
  rep.pass = beta_error < tol.equality && rep.offdiag_max < tol.equality &&
             std::abs(rep.entropy_measured - rep.entropy_expected) < tol.equality && rep.eigen_residual < tol.residual;
  return rep;
}

VerificationReport verify_state(const StateVector& state, const CriticalPoint& point, const Tolerances& tol) {
  Eigen::VectorXd beta(static_cast<Eigen::Index>(point.beta.size()));
  for (std::size_t i = 0; i < point.beta.size(); ++i) beta(static_cast<Eigen::Index>(i)) = point.beta[i].to_double();
  return verify_state(state, beta, point.entropy.to_double(), tol);
}

VerificationReport verify_state(const StateVector& state, const Tolerances& tol) {
  auto rep = measure(state);
  rep.beta_expected = rep.beta_measured;
  rep.entropy_expected = rep.entropy_measured;
  rep.pass = rep.eigen_residual < tol.residual;
  return rep;
}

}  // namespace qcrit
