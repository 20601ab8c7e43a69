#include "qcrit/state_builder.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace qcrit {

StateVector StateVector::basis(int qubits, Label label) {
  check_qubits(qubits);
  StateVector s{qubits, Amplitudes::Zero(Eigen::Index{1} << qubits)};
  s.amplitudes(static_cast<Eigen::Index>(label)) = 1.0;
  return s;
}

std::string to_string(Route route) { return route == Route::interior ? "interior" : "boundary"; }

double polygon_residual(const PolygonProblem& p, const std::vector<double>& phases) {
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < p.lengths.size(); ++j) {
    double angle = 0.0;
    for (std::size_t k = 0; k < phases.size(); ++k) angle += p.sign_patterns[j][k] * phases[k];
    sum += std::polar(p.lengths[j], angle);
  }
  return std::abs(sum);
}

namespace {

// Angles gamma_j with sum_j b_j exp(i gamma_j) = 0: the longest side points
// along pi, the others are split greedily into two bundles that close a
// triangle with it.
std::vector<double> closing_angles(const std::vector<double>& b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return b[x] > b[y]; });

  std::vector<int> bundle(n, 0);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = order[i];
    if (s1 <= s2) { bundle[j] = 1; s1 += b[j]; }
    else { bundle[j] = 2; s2 += b[j]; }
  }
  const double s0 = b[order[0]];
  // Apex of the triangle on base s0. The height comes from Kahan's form of
  // Heron's formula, so nearly flat triangles still close to rounding error.
  std::array<double, 3> sides{s0, s1, s2};
  std::sort(sides.begin(), sides.end(), std::greater<>());
  const auto [p, q, r] = sides;
  const double area4 = std::sqrt(std::max(0.0, (p + (q + r)) * (r - (p - q)) * (r + (p - q)) * (p + (q - r))));
  const double x = (s0 * s0 + s1 * s1 - s2 * s2) / (2.0 * s0);
  const double y = area4 / (2.0 * s0);
  const double t1 = std::atan2(y, x);
  const double t2 = -std::atan2(y, s0 - x);

  std::vector<double> gamma(n);
  for (std::size_t j = 0; j < n; ++j) gamma[j] = bundle[j] == 0 ? std::numbers::pi : (bundle[j] == 1 ? t1 : t2);
  return gamma;
}

}  // namespace

std::vector<double> solve_polygon_phases(const PolygonProblem& p, double tolerance) {
  const std::size_t n = p.lengths.size();
  if (n != p.sign_patterns.size()) throw std::invalid_argument("polygon: one sign pattern per side required");
  if (n < 2) throw Infeasible("polygon with a single side cannot close");
  const int m = p.unknowns();
  for (const auto& row : p.sign_patterns)
    if (static_cast<int>(row.size()) != m) throw std::invalid_argument("polygon: ragged sign patterns");

  const double total = std::accumulate(p.lengths.begin(), p.lengths.end(), 0.0);
  const double longest = *std::max_element(p.lengths.begin(), p.lengths.end());
  if (longest > total - longest + tolerance) throw Infeasible("polygon inequality violated");

  const auto gamma = closing_angles(p.lengths);
  // gamma_j = sigma_j . phi + c; the extra column absorbs a global phase.
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), m + 1);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = 0; k < m; ++k) a(static_cast<Eigen::Index>(j), k) = p.sign_patterns[j][static_cast<std::size_t>(k)];
    a(static_cast<Eigen::Index>(j), m) = 1.0;
    rhs(static_cast<Eigen::Index>(j)) = gamma[j];
  }
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(rhs);
  std::vector<double> phases(x.data(), x.data() + m);
  if (polygon_residual(p, phases) > tolerance) throw Infeasible("sign patterns cannot realize the closing angles");
  return phases;
}

StateVector interior_state(const MinimalCombination& mc) {
  for (Eigen::Index i = 0; i < mc.beta.size(); ++i)
    if (mc.beta(i).is_zero()) throw ZeroComponent("beta has a zero component; use the boundary construction");
  StateVector s{mc.qubits(), Amplitudes::Zero(Eigen::Index{1} << mc.qubits())};
  for (std::size_t i = 0; i < mc.subset.size(); ++i)
    s.amplitudes(static_cast<Eigen::Index>(mc.subset[i].label)) = std::sqrt(mc.coefficients[i].to_double());
  return s;
}

StateVector boundary_state(const CanonicalBeta& beta, double tolerance) {
  const int qubits = static_cast<int>(beta.size());
  check_qubits(qubits);
  int m = 0;
  while (m < qubits && !beta[static_cast<std::size_t>(m)].is_zero()) ++m;
  for (int i = m; i < qubits; ++i)
    if (!beta[static_cast<std::size_t>(i)].is_zero()) throw std::invalid_argument("beta is not canonical");
  if (m == qubits) throw std::invalid_argument("boundary_state needs a zero component");
  const int tail = qubits - m;
  const Label ones = (Label{1} << tail) - 1;

  // Psi on the first m qubits, as (label, amplitude) pairs.
  std::vector<Label> labels{0};
  std::vector<double> weights{1.0};
  if (m > 0) {
    RationalVector reduced(m);
    for (int i = 0; i < m; ++i) reduced(i) = beta[static_cast<std::size_t>(i)];
    const auto w = minimal_witness(reduced);
    if (!w) throw std::logic_error("reduced beta has no witness");
    labels.clear();
    weights.clear();
    for (std::size_t i = 0; i < w->subset.size(); ++i) {
      labels.push_back(w->subset[i].label);
      weights.push_back(w->coefficients[i].to_double());
    }
  }

  std::vector<double> phases(static_cast<std::size_t>(m), 0.0);
  PolygonProblem polygon;
  polygon.lengths = weights;
  for (Label l : labels) {
    std::vector<int> row;
    for (int k = 0; k < m; ++k) row.push_back(((l >> (m - 1 - k)) & 1U) ? 1 : -1);
    polygon.sign_patterns.push_back(std::move(row));
  }
  // Two or more tail qubits already make the blocks orthogonal.
  if (tail == 1) phases = solve_polygon_phases(polygon, tolerance);

  StateVector s{qubits, Amplitudes::Zero(Eigen::Index{1} << qubits)};
  const double scale = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    double angle = 0.0;
    for (int k = 0; k < m; ++k) angle += polygon.sign_patterns[j][static_cast<std::size_t>(k)] * phases[static_cast<std::size_t>(k)];
    const double amp = std::sqrt(weights[j]) * scale;
    s.amplitudes(static_cast<Eigen::Index>(labels[j] << tail)) += amp;
    s.amplitudes(static_cast<Eigen::Index>((labels[j] << tail) | ones)) += std::polar(amp, angle);
  }
  return s;
}

ConstructedState construct_state(const CriticalPoint& point, double tolerance) {
  if (point.boundary) return {boundary_state(point.beta, tolerance), Route::boundary};
  if (!point.witnesses.empty()) return {interior_state(point.witnesses.front()), Route::interior};
  const auto w = minimal_witness(point.beta.vector());
  if (!w) throw std::logic_error("critical point has no witness");
  return {interior_state(*w), Route::interior};
}

}  // namespace qcrit
