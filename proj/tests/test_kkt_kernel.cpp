#include "qcrit/enumerator.hpp"
#include "qcrit/kkt_kernel.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace qcrit;

namespace {

std::vector<WeightVertex> as_vertices(const std::vector<Label>& labels, int qubits) {
  std::vector<WeightVertex> v;
  for (Label l : labels) v.push_back({l, qubits});
  return v;
}

}  // namespace

TEST_CASE("W subset in integer form") {
  const std::vector<Label> w{0b011, 0b101, 0b110};
  const auto sol = kernel::solve_kkt(w, 3);
  REQUIRE(sol.ok());
  CHECK(sol.nonnegative());
  for (int j = 0; j < 3; ++j) CHECK(Rational(sol.numerators[static_cast<std::size_t>(j)], sol.denominator) == Rational(1, 3));
  // nu = 2 lambda = -4 |beta|^2
  CHECK(Rational(sol.numerators[3], sol.denominator) == Rational(-1, 3));
  const auto key = kernel::beta_key(w, 3, sol);
  CHECK(key.values[0] == 1);
  CHECK(key.values[1] == 1);
  CHECK(key.values[2] == 1);
  CHECK(key.values[3] == 6);
}

TEST_CASE("integer kernel matches the exact solver") {
  std::mt19937 rng(2024);
  int compared = 0, overflow = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int qubits = 2 + trial % 15;
    const Label n = Label{1} << qubits;
    const std::size_t k = 1 + rng() % static_cast<std::size_t>(qubits + 1);
    std::vector<Label> labels;
    while (labels.size() < k) {
      const Label x = rng() % n;
      if (std::find(labels.begin(), labels.end(), x) == labels.end()) labels.push_back(x);
    }
    std::sort(labels.begin(), labels.end());

    const auto sol = kernel::solve_kkt(labels, qubits);
    const auto exact = solve_subset(as_vertices(labels, qubits));
    if (sol.status == kernel::KktSolution::Status::overflow) {
      ++overflow;
      continue;
    }
    CHECK(sol.ok() == affinely_independent(labels, qubits));
    if (!sol.ok()) {
      CHECK(std::holds_alternative<Rejection>(exact));
      continue;
    }
    ++compared;
    CHECK(sol.nonnegative() == std::holds_alternative<MinimalCombination>(exact));
    if (const auto* mc = std::get_if<MinimalCombination>(&exact)) {
      for (std::size_t j = 0; j < k; ++j) CHECK(Rational(sol.numerators[j], sol.denominator) == mc->coefficients[j]);
      CHECK(Rational(sol.numerators[k], sol.denominator) == Rational(2) * mc->lambda);
      const auto key = kernel::beta_key(labels, qubits, sol);
      const auto canon = canonicalize(mc->beta);
      for (int i = 0; i < qubits; ++i)
        CHECK(Rational(key.values[static_cast<std::size_t>(i)], key.values[static_cast<std::size_t>(qubits)]) ==
              canon[static_cast<std::size_t>(i)]);
    }
  }
  CHECK(compared > 1000);
  CHECK(overflow > 0);
}

TEST_CASE("oversized systems are refused") {
  std::vector<Label> labels(kernel::kMaxSystem);
  std::iota(labels.begin(), labels.end(), Label{0});
  CHECK_FALSE(kernel::solve_kkt(labels, 16).ok());
  CHECK_FALSE(kernel::solve_kkt({}, 3).ok());
}
