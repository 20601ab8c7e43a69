// kkt_kernel.hpp
// Fixed-width exact solver for the bordered Gram system of a vertex subset,
// used on the enumeration hot path.
//
// With M_ij = 4 alpha_i.alpha_j = L - 2 hamming(i, j) and nu = 2 lambda the
// system becomes the integer system [[M, 1], [1^T, 0]] (a; nu) = (0; 1).
// Fraction-free elimination yields a = X / D, nu = X_nu / D with integer
// Cramer numerators. Every intermediate is a minor (or a product of two) and
// is bounded by Hadamard's inequality; the kernel refuses sizes whose bound
// does not fit, and callers fall back to the arbitrary-precision path.

#pragma once

#include "qcrit/hypercube.hpp"

#include <array>
#include <cstdint>
#include <span>

namespace qcrit::kernel {

inline constexpr std::size_t kMaxSystem = kMaxQubits + 2;

struct KktSolution {
  enum class Status { ok, singular, overflow };

  Status status = Status::singular;
  int size = 0;                   // k, the number of vertices
  std::int64_t denominator = 0;   // D, nonzero when ok (sign arbitrary)
  // numerators[j] for j < k gives a_j = numerators[j] / D;
  // numerators[k] gives nu = 2 lambda = numerators[k] / D.
  std::array<std::int64_t, kMaxSystem> numerators{};

  bool ok() const { return status == Status::ok; }
  bool nonnegative() const {
    for (int j = 0; j < size; ++j)
      if ((numerators[static_cast<std::size_t>(j)] < 0) != (denominator < 0) && numerators[static_cast<std::size_t>(j)] != 0)
        return false;
    return true;
  }
};

KktSolution solve_kkt(std::span<const Label> labels, int qubits);

/// Canonical beta in integer form: |beta| sorted non-increasingly, as
/// values[i] / values[qubits] in lowest common terms.
struct BetaKey {
  std::array<std::int64_t, kMaxQubits + 1> values{};
  int qubits = 0;

  friend bool operator==(const BetaKey&, const BetaKey&) = default;
};

struct BetaKeyHash {
  std::size_t operator()(const BetaKey& key) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i <= key.qubits; ++i) {
      h ^= static_cast<std::uint64_t>(key.values[static_cast<std::size_t>(i)]);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Key of beta = sum_j a_j alpha_j for a solved system. Requires sol.ok().
BetaKey beta_key(std::span<const Label> labels, int qubits, const KktSolution& sol);

/// Exact signed beta components as numerators over 2D (not reduced).
std::array<std::int64_t, kMaxQubits> beta_numerators(std::span<const Label> labels, int qubits,
                                                     const KktSolution& sol);

}  // namespace qcrit::kernel
