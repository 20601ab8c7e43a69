#include "qcrit/kkt_kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace qcrit::kernel {

namespace {

enum class Width { narrow, wide, none };

// Hadamard bound on every minor of the (k+1)x(k+1) integer system.
Width width_for(int k, int qubits) {
  const double n = k + 1;
  const double row_sq = static_cast<double>(k) * qubits * qubits + 1.0;
  const double log2_bound = 0.5 * n * std::log2(row_sq);
  const double slack = std::log2(n) + 2.0;
  if (2.0 * log2_bound + slack < 62.0) return Width::narrow;
  if (log2_bound + slack < 62.0) return Width::wide;
  return Width::none;
}

template <typename Int>
KktSolution eliminate(std::span<const Label> labels, int qubits) {
  const std::size_t k = labels.size();
  const std::size_t n = k + 1;
  const std::size_t cols = n + 1;
  std::array<Int, kMaxSystem * (kMaxSystem + 1)> m{};

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      m[i * cols + j] = qubits - 2 * std::popcount(labels[i] ^ labels[j]);
    m[i * cols + k] = 1;
    m[i * cols + n] = 0;
  }
  for (std::size_t j = 0; j < k; ++j) m[k * cols + j] = 1;
  m[k * cols + k] = 0;
  m[k * cols + n] = 1;

  KktSolution out;
  out.size = static_cast<int>(k);
  Int previous = 1;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t pivot = n;
    for (std::size_t r = p; r < n; ++r) {
      if (m[r * cols + p] != 0) { pivot = r; break; }
    }
    if (pivot == n) {
      out.status = KktSolution::Status::singular;
      return out;
    }
    if (pivot != p)
      for (std::size_t c = p; c < cols; ++c) std::swap(m[p * cols + c], m[pivot * cols + c]);
    const Int diag = m[p * cols + p];
    for (std::size_t r = p + 1; r < n; ++r) {
      const Int lead = m[r * cols + p];
      for (std::size_t c = p + 1; c < cols; ++c)
        m[r * cols + c] = (m[r * cols + c] * diag - lead * m[p * cols + c]) / previous;
      m[r * cols + p] = 0;
    }
    previous = diag;
  }

  // Back substitution on Cramer numerators X_i = D x_i.
  const Int det = m[(n - 1) * cols + (n - 1)];
  std::array<Int, kMaxSystem> x{};
  for (std::size_t ii = n; ii-- > 0;) {
    Int acc = det * m[ii * cols + n];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= m[ii * cols + j] * x[j];
    x[ii] = acc / m[ii * cols + ii];
  }
  out.status = KktSolution::Status::ok;
  out.denominator = static_cast<std::int64_t>(det);
  for (std::size_t i = 0; i < n; ++i) out.numerators[i] = static_cast<std::int64_t>(x[i]);
  return out;
}

}  // namespace

KktSolution solve_kkt(std::span<const Label> labels, int qubits) {
  const int k = static_cast<int>(labels.size());
  if (k == 0 || static_cast<std::size_t>(k) + 1 > kMaxSystem) return {};
  switch (width_for(k, qubits)) {
    case Width::narrow: return eliminate<std::int64_t>(labels, qubits);
    case Width::wide: return eliminate<__int128>(labels, qubits);
    case Width::none: break;
  }
  KktSolution out;
  out.status = KktSolution::Status::overflow;
  out.size = k;
  return out;
}

std::array<std::int64_t, kMaxQubits> beta_numerators(std::span<const Label> labels, int qubits,
                                                     const KktSolution& sol) {
  std::array<std::int64_t, kMaxQubits> b{};
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const std::int64_t x = sol.numerators[j];
    for (int l = 0; l < qubits; ++l) {
      const bool up = (labels[j] >> (qubits - 1 - l)) & 1U;
      b[static_cast<std::size_t>(l)] += up ? x : -x;
    }
  }
  return b;
}

BetaKey beta_key(std::span<const Label> labels, int qubits, const KktSolution& sol) {
  const auto b = beta_numerators(labels, qubits, sol);
  BetaKey key;
  key.qubits = qubits;
  std::int64_t den = 2 * (sol.denominator < 0 ? -sol.denominator : sol.denominator);
  std::int64_t g = den;
  for (int l = 0; l < qubits; ++l) {
    const std::int64_t v = b[static_cast<std::size_t>(l)] < 0 ? -b[static_cast<std::size_t>(l)] : b[static_cast<std::size_t>(l)];
    key.values[static_cast<std::size_t>(l)] = v;
    g = std::gcd(g, v);
  }
  for (int l = 0; l < qubits; ++l) key.values[static_cast<std::size_t>(l)] /= g;
  std::sort(key.values.begin(), key.values.begin() + qubits, std::greater<>());
  key.values[static_cast<std::size_t>(qubits)] = den / g;
  return key;
}

}  // namespace qcrit::kernel
