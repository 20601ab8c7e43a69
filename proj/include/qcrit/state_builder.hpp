// state_builder.hpp
// Explicit critical states: sqrt(a) superpositions over a witnessing subset
// for interior beta, and the two-block construction with polygon phases when
// some components of beta vanish.

#pragma once

#include "qcrit/enumerator.hpp"

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcrit {

using Amplitudes = Eigen::VectorXcd;

/// A pure L-qubit state; amplitude index b follows the label convention of
/// WeightVertex (qubit 0 is the most significant bit).
struct StateVector {
  int qubits = 0;
  Amplitudes amplitudes;

  double norm() const { return amplitudes.norm(); }
  static StateVector basis(int qubits, Label label);
};

class ZeroComponent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sides b_j of a polygon to be closed by phases exp(i sum_k sigma_jk phi_k).
struct PolygonProblem {
  std::vector<double> lengths;
  std::vector<std::vector<int>> sign_patterns;  // entries +1 / -1, one row per side

  int unknowns() const { return sign_patterns.empty() ? 0 : static_cast<int>(sign_patterns.front().size()); }
};

/// |sum_j b_j exp(i sum_k sigma_jk phi_k)|.
double polygon_residual(const PolygonProblem& p, const std::vector<double>& phases);

/// Phases phi_1..phi_M closing the polygon to within `tolerance`.
/// Throws Infeasible for a single side, a violated polygon inequality, or
/// sign patterns that cannot realize the required angles.
std::vector<double> solve_polygon_phases(const PolygonProblem& p, double tolerance = 1e-12);

/// sqrt(a_i) on the witness labels. Throws ZeroComponent if some beta_m is 0.
StateVector interior_state(const MinimalCombination& mc);

enum class Route { interior, boundary };

std::string to_string(Route route);

struct ConstructedState {
  StateVector state;
  Route route = Route::interior;
};

/// Critical state for beta with at least one zero component. Throws
/// Infeasible for the excluded pattern.
StateVector boundary_state(const CanonicalBeta& beta, double tolerance = 1e-12);

/// Dispatches on whether beta has a zero component.
ConstructedState construct_state(const CriticalPoint& point, double tolerance = 1e-12);

}  // namespace qcrit
