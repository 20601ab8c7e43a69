// enumerator.hpp
// Minimal combinations of weights: closest points to the origin of convex
// hulls of hypercube vertex subsets, and the resulting critical values of the
// linear entropy.

#pragma once

#include "qcrit/hypercube.hpp"
#include "qcrit/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace qcrit {

/// A solved vertex subset: beta = sum_i a_i alpha_i with sum a_i = 1, a_i >= 0,
/// and beta . alpha_i = -lambda / 2 = |beta|^2 for every member.
struct MinimalCombination {
  std::vector<WeightVertex> subset;
  std::vector<Rational> coefficients;
  Rational lambda;
  RationalVector beta;

  int qubits() const { return static_cast<int>(beta.size()); }
  Rational norm_sq() const;
};

enum class Rejection { singular, negative_coefficient };

using SubsetSolution = std::variant<MinimalCombination, Rejection>;

struct CriticalPoint {
  CanonicalBeta beta;
  Rational norm_sq;
  Rational entropy;
  bool boundary = false;
  /// The smallest witnessing subset, lexicographically least by labels.
  std::vector<MinimalCombination> witnesses;

  int qubits() const { return static_cast<int>(beta.size()); }
};

struct KktSystem {
  RationalMatrix matrix;
  RationalVector rhs;
};

Rational squared_norm(const RationalVector& v);

/// The bordered Gram system: 2 alpha_i . alpha_j, a border of ones, corner 0,
/// right-hand side (0, ..., 0, 1).
KktSystem build_kkt(std::span<const WeightVertex> subset);

SubsetSolution solve_subset(std::span<const WeightVertex> subset);

/// Non-negative components and not a permutation of (1/2, ..., 1/2, 0).
bool accept(const RationalVector& beta);
bool accept(const CanonicalBeta& beta);
/// True for a permutation of (1/2, ..., 1/2, 0): minimal, but with empty fiber.
bool is_excluded_pattern(const CanonicalBeta& beta);

/// E = 1/2 - (2/L) |beta|^2.
Rational entropy_value(const RationalVector& beta);
Rational entropy_value(const CanonicalBeta& beta);

/// Hypercube vertices alpha with alpha . beta == |beta|^2, in label order.
std::vector<WeightVertex> support_vertices(const RationalVector& beta);

/// Smallest subset of support_vertices(beta) whose closest point is exactly
/// beta with non-negative coefficients; ties broken by least label sequence.
std::optional<MinimalCombination> minimal_witness(const RationalVector& beta);

struct EnumerationOptions {
  Symmetry symmetry = Symmetry::off;
  /// Keep (1/2, ..., 1/2, 0)-type points.
  bool raw = false;
  int workers = 1;
  bool witnesses = true;
  /// Track orbit sizes of visited representatives (symmetry on only).
  bool count_orbits = false;
};

struct EnumerationStats {
  std::uint64_t subsets_examined = 0;
  std::uint64_t solves = 0;
  std::uint64_t singular = 0;
  std::uint64_t negative = 0;
  std::uint64_t minimal = 0;
  std::uint64_t wide_fallbacks = 0;
  std::uint64_t work_units = 0;
  /// Independent subsets of size >= 2 represented by the visited ones.
  std::uint64_t covered_subsets = 0;
  double seconds = 0.0;
};

struct EnumerationResult {
  int qubits = 0;
  std::vector<CriticalPoint> points;
  EnumerationStats stats;
};

/// All critical points for L qubits, sorted by entropy ascending, then beta
/// lexicographically descending. The point set (and witnesses) do not depend
/// on the symmetry mode or the worker count.
EnumerationResult enumerate(int qubits, const EnumerationOptions& options = {});

/// (beta; 1/2) and (beta; 0) for every point, canonicalized, in input order.
std::vector<CanonicalBeta> extend_iteratively(std::span<const CanonicalBeta> points);
std::vector<CanonicalBeta> extend_iteratively(std::span<const CriticalPoint> points);

CriticalPoint make_critical_point(const CanonicalBeta& beta, bool with_witness = true);

/// The ordering used for all outputs.
bool output_order(const CriticalPoint& a, const CriticalPoint& b);

}  // namespace qcrit
