#include "qcrit/enumerator.hpp"

#include "qcrit/exact_linalg.hpp"
#include "qcrit/kkt_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace qcrit {

Rational MinimalCombination::norm_sq() const { return squared_norm(beta); }

Rational squared_norm(const RationalVector& v) {
  Rational acc(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += v(i) * v(i);
  return acc;
}

namespace {

int common_qubits(std::span<const WeightVertex> subset) {
  if (subset.empty()) throw std::invalid_argument("vertex subset must be nonempty");
  const int qubits = subset.front().qubits;
  for (const auto& v : subset)
    if (v.qubits != qubits) throw std::invalid_argument("vertex subset mixes qubit counts");
  return qubits;
}

std::vector<WeightVertex> to_vertices(std::span<const Label> labels, int qubits) {
  std::vector<WeightVertex> out;
  out.reserve(labels.size());
  for (Label l : labels) out.push_back({l, qubits});
  return out;
}

CanonicalBeta from_key(const kernel::BetaKey& key) {
  CanonicalBeta beta;
  const long den = static_cast<long>(key.values[static_cast<std::size_t>(key.qubits)]);
  for (int i = 0; i < key.qubits; ++i) beta.components.emplace_back(static_cast<long>(key.values[static_cast<std::size_t>(i)]), den);
  return beta;
}

}  // namespace

KktSystem build_kkt(std::span<const WeightVertex> subset) {
  common_qubits(subset);
  const auto k = static_cast<Eigen::Index>(subset.size());
  KktSystem sys{RationalMatrix(k + 1, k + 1), RationalVector(k + 1)};
  std::vector<RationalVector> coords;
  coords.reserve(subset.size());
  for (const auto& v : subset) coords.push_back(v.coordinates<Rational>());
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j)
      sys.matrix(i, j) = Rational(2) * coords[static_cast<std::size_t>(i)].dot(coords[static_cast<std::size_t>(j)]);
    sys.matrix(i, k) = Rational(1);
    sys.matrix(k, i) = Rational(1);
    sys.rhs(i) = Rational(0);
  }
  sys.matrix(k, k) = Rational(0);
  sys.rhs(k) = Rational(1);
  return sys;
}

SubsetSolution solve_subset(std::span<const WeightVertex> subset) {
  const int qubits = common_qubits(subset);
  const auto sys = build_kkt(subset);
  const auto x = solve_linear<Rational>(sys.matrix, sys.rhs);
  if (!x) return Rejection::singular;

  MinimalCombination mc;
  mc.subset.assign(subset.begin(), subset.end());
  mc.beta = RationalVector::Constant(qubits, Rational(0));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const Rational& a = (*x)(static_cast<Eigen::Index>(i));
    if (a.sign() < 0) return Rejection::negative_coefficient;
    mc.coefficients.push_back(a);
    mc.beta += subset[i].coordinates<Rational>() * a;
  }
  mc.lambda = (*x)(static_cast<Eigen::Index>(subset.size()));
  return mc;
}

bool is_excluded_pattern(const CanonicalBeta& beta) {
  const std::size_t n = beta.size();
  if (n == 0 || !beta[n - 1].is_zero()) return false;
  const Rational half(1, 2);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(beta[i] == half)) return false;
  return true;
}

bool accept(const CanonicalBeta& beta) { return !is_excluded_pattern(beta); }

bool accept(const RationalVector& beta) {
  for (Eigen::Index i = 0; i < beta.size(); ++i)
    if (beta(i).sign() < 0) return false;
  return accept(canonicalize(beta));
}

Rational entropy_value(const RationalVector& beta) {
  const auto qubits = beta.size();
  if (qubits == 0) throw std::invalid_argument("entropy_value: empty beta");
  return Rational(1, 2) - Rational(2) * squared_norm(beta) / Rational(static_cast<long>(qubits));
}

Rational entropy_value(const CanonicalBeta& beta) { return entropy_value(beta.vector()); }

std::vector<WeightVertex> support_vertices(const RationalVector& beta) {
  const int qubits = static_cast<int>(beta.size());
  const Rational target = squared_norm(beta);
  std::vector<WeightVertex> out;
  for (const auto& v : vertices(qubits)) {
    Rational dot(0);
    for (int l = 0; l < qubits; ++l) {
      if (beta(l).is_zero()) continue;
      if (v.bit(l)) dot += beta(l); else dot -= beta(l);
    }
    if (dot / Rational(2) == target) out.push_back(v);
  }
  return out;
}

std::optional<MinimalCombination> minimal_witness(const RationalVector& beta) {
  const int qubits = static_cast<int>(beta.size());
  check_qubits(qubits);
  const auto support = support_vertices(beta);
  const std::size_t m = support.size();
  const std::size_t max_k = std::min<std::size_t>(m, static_cast<std::size_t>(qubits) + 1);

  std::vector<Label> labels;
  for (std::size_t k = 1; k <= max_k; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      labels.clear();
      for (std::size_t i : idx) labels.push_back(support[i].label);
      const auto sol = kernel::solve_kkt(labels, qubits);
      bool candidate = false;
      if (sol.status == kernel::KktSolution::Status::overflow) {
        candidate = true;
      } else if (sol.ok() && sol.nonnegative()) {
        const auto num = kernel::beta_numerators(labels, qubits, sol);
        const Rational den(2 * sol.denominator);
        candidate = true;
        for (int l = 0; l < qubits && candidate; ++l)
          candidate = beta(l) * den == Rational(static_cast<long>(num[static_cast<std::size_t>(l)]));
      }
      if (candidate) {
        const auto verts = to_vertices(labels, qubits);
        auto solved = solve_subset(verts);
        if (auto* mc = std::get_if<MinimalCombination>(&solved); mc && mc->beta == beta) return std::move(*mc);
      }
      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

CriticalPoint make_critical_point(const CanonicalBeta& beta, bool with_witness) {
  CriticalPoint cp;
  cp.beta = beta;
  const auto v = beta.vector();
  cp.norm_sq = squared_norm(v);
  cp.entropy = entropy_value(v);
  cp.boundary = beta.boundary();
  if (with_witness) {
    auto w = minimal_witness(v);
    if (!w) {
      std::string text;
      for (const auto& c : beta.components) text += (text.empty() ? "" : ", ") + c.to_string();
      throw std::logic_error("no witnessing subset for beta (" + text + ")");
    }
    cp.witnesses.push_back(std::move(*w));
  }
  return cp;
}

bool output_order(const CriticalPoint& a, const CriticalPoint& b) {
  if (!(a.entropy == b.entropy)) return a.entropy < b.entropy;
  return a.beta > b.beta;
}

namespace {

struct WorkerState {
  std::unordered_set<kernel::BetaKey, kernel::BetaKeyHash> keys;
  std::set<CanonicalBeta> wide;
  EnumerationStats stats;
};

class Visitor {
 public:
  Visitor(const SubsetStream& stream, const EnumerationOptions& options, WorkerState& state)
      : stream_(stream), options_(options), state_(state) {}

  bool operator()(std::span<const Label> labels) {
    auto& st = state_.stats;
    ++st.subsets_examined;
    if (labels.size() < 2) return true;
    ++st.solves;
    const int qubits = stream_.qubits();
    const auto sol = kernel::solve_kkt(labels, qubits);
    if (sol.status == kernel::KktSolution::Status::overflow) return wide(labels);
    if (!sol.ok()) {
      ++st.singular;
      return false;
    }
    count_orbit(labels);
    if (!sol.nonnegative()) {
      ++st.negative;
      return true;
    }
    ++st.minimal;
    state_.keys.insert(kernel::beta_key(labels, qubits, sol));
    return true;
  }

 private:
  void count_orbit(std::span<const Label> labels) {
    if (stream_.symmetry() == Symmetry::off) {
      ++state_.stats.covered_subsets;
    } else if (options_.count_orbits) {
      std::uint64_t automorphisms = 0;
      stream_.group()->is_canonical(labels, &automorphisms);
      state_.stats.covered_subsets += stream_.group()->order() / automorphisms;
    }
  }

  bool wide(std::span<const Label> labels) {
    auto& st = state_.stats;
    ++st.wide_fallbacks;
    const auto verts = to_vertices(labels, stream_.qubits());
    const auto solved = solve_subset(verts);
    if (std::holds_alternative<Rejection>(solved)) {
      if (std::get<Rejection>(solved) == Rejection::singular) {
        ++st.singular;
        return false;
      }
      count_orbit(labels);
      ++st.negative;
      return true;
    }
    count_orbit(labels);
    ++st.minimal;
    state_.wide.insert(canonicalize(std::get<MinimalCombination>(solved).beta));
    return true;
  }

  const SubsetStream& stream_;
  const EnumerationOptions& options_;
  WorkerState& state_;
};

void accumulate(EnumerationStats& total, const EnumerationStats& part) {
  total.subsets_examined += part.subsets_examined;
  total.solves += part.solves;
  total.singular += part.singular;
  total.negative += part.negative;
  total.minimal += part.minimal;
  total.wide_fallbacks += part.wide_fallbacks;
  total.covered_subsets += part.covered_subsets;
}

}  // namespace

EnumerationResult enumerate(int qubits, const EnumerationOptions& options) {
  check_qubits(qubits);
  if (options.workers < 1) throw std::invalid_argument("worker count must be at least 1");
  const auto start = std::chrono::steady_clock::now();

  EnumerationResult result;
  result.qubits = qubits;
  std::set<CanonicalBeta> found;

  if (qubits >= 2) {
    const SubsetStream stream(qubits, qubits, options.symmetry);
    WorkerState serial;
    const auto prefixes = stream.split(Visitor(stream, options, serial));
    result.stats.work_units = prefixes.size();

    const auto workers = static_cast<std::size_t>(options.workers);
    std::vector<WorkerState> states(workers);
    std::atomic<std::size_t> next{0};
    auto run = [&](std::size_t w) {
      Visitor visit(stream, options, states[w]);
      for (std::size_t i = next++; i < prefixes.size(); i = next++) stream.extend(prefixes[i], visit);
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
    }

    states.push_back(std::move(serial));
    for (auto& st : states) {
      accumulate(result.stats, st.stats);
      for (const auto& key : st.keys) found.insert(from_key(key));
      found.insert(st.wide.begin(), st.wide.end());
    }
  }

  found.insert(CanonicalBeta{std::vector<Rational>(static_cast<std::size_t>(qubits), Rational(1, 2))});

  for (const auto& beta : found) {
    if (!options.raw && is_excluded_pattern(beta)) continue;
    result.points.push_back(make_critical_point(beta, options.witnesses));
  }
  std::sort(result.points.begin(), result.points.end(), output_order);
  result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CanonicalBeta> extend_iteratively(std::span<const CanonicalBeta> points) {
  std::vector<CanonicalBeta> out;
  out.reserve(2 * points.size());
  for (const auto& beta : points) {
    if (beta.size() + 1 > static_cast<std::size_t>(kMaxQubits)) throw std::out_of_range("extension exceeds qubit limit");
    for (const Rational& tail : {Rational(1, 2), Rational(0)}) {
      RationalVector v(static_cast<Eigen::Index>(beta.size()) + 1);
      for (std::size_t i = 0; i < beta.size(); ++i) v(static_cast<Eigen::Index>(i)) = beta[i];
      v(static_cast<Eigen::Index>(beta.size())) = tail;
      out.push_back(canonicalize(v));
    }
  }
  return out;
}

std::vector<CanonicalBeta> extend_iteratively(std::span<const CriticalPoint> points) {
  std::vector<CanonicalBeta> betas;
  betas.reserve(points.size());
  for (const auto& p : points) betas.push_back(p.beta);
  return extend_iteratively(std::span<const CanonicalBeta>(betas));
}

}  // namespace qcrit
