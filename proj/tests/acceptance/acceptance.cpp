// One line per acceptance criterion. `--criterion N` runs a single one; the
// exit status is non-zero if any selected criterion fails.

#include "qcrit/io.hpp"
#include "qcrit/quantum_verify.hpp"
#include "qcrit/state_builder.hpp"

#include "oracles/qp_oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace qcrit;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    note(why);
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double x, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

Rational q(long n, long d = 1) { return Rational(n, d); }

CanonicalBeta cb(std::vector<Rational> xs) { return CanonicalBeta{std::move(xs)}; }

RationalVector vec(const std::vector<Rational>& xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

std::set<CanonicalBeta> beta_set(const EnumerationResult& r) {
  std::set<CanonicalBeta> s;
  for (const auto& p : r.points) s.insert(p.beta);
  return s;
}

Verdict counts() {
  Verdict v;
  const std::map<int, std::size_t> expected{{1, 1}, {2, 2}, {3, 4}, {4, 9}, {5, 25}, {6, 115}, {7, 921}};

  const auto t0 = Clock::now();
  std::string small;
  for (int L = 1; L <= 5; ++L) {
    const auto n = enumerate(L, {.symmetry = Symmetry::off, .workers = 1}).points.size();
    small += (L > 1 ? "," : "") + std::to_string(n);
    if (n != expected.at(L)) v.fail("L=" + std::to_string(L) + " gives " + std::to_string(n));
  }
  const double small_time = since(t0);
  v.note("L=1..5 counts " + small + " in " + fixed(small_time) + " s");
  if (small_time >= 10.0) v.fail("L=1..5 took longer than 10 s");

  for (int L : {6, 7}) {
    const auto t = Clock::now();
    const auto n = enumerate(L, {.symmetry = Symmetry::on, .workers = 8}).points.size();
    const double secs = since(t);
    const std::string line = "L=" + std::to_string(L) + " gives " + std::to_string(n) + " (expected " +
                             std::to_string(expected.at(L)) + ") in " + fixed(secs) + " s";
    if (n != expected.at(L)) v.fail(line);
    else v.note(line);
    if (L == 6 && secs > 1800.0) v.fail("L=6 exceeded 30 minutes");
  }
  return v;
}

Verdict table(int L, const std::map<CanonicalBeta, Rational>& expected) {
  Verdict v;
  std::map<CanonicalBeta, Rational> got;
  for (const auto& p : enumerate(L).points) got.emplace(p.beta, p.entropy);
  if (got.size() != enumerate(L).points.size()) v.fail("duplicate beta in output");
  for (const auto& [beta, e] : expected) {
    const auto it = got.find(beta);
    if (it == got.end()) v.fail("missing " + beta_string(beta));
    else if (it->second != e) v.fail(beta_string(beta) + " has entropy " + it->second.to_string());
  }
  for (const auto& [beta, e] : got)
    if (!expected.count(beta)) v.fail("unexpected " + beta_string(beta));
  if (v.pass) v.note(std::to_string(got.size()) + " points with matching entropies");
  return v;
}

Verdict table_three() {
  return table(3, {{cb({q(1, 2), q(1, 2), q(1, 2)}), q(0)},
                   {cb({q(1, 2), q(0), q(0)}), q(1, 3)},
                   {cb({q(1, 6), q(1, 6), q(1, 6)}), q(4, 9)},
                   {cb({q(0), q(0), q(0)}), q(1, 2)}});
}

Verdict table_four() {
  return table(4, {{cb({q(1, 2), q(1, 2), q(1, 2), q(1, 2)}), q(0)},
                   {cb({q(1, 2), q(1, 2), q(0), q(0)}), q(1, 4)},
                   {cb({q(1, 2), q(1, 6), q(1, 6), q(1, 6)}), q(1, 3)},
                   {cb({q(1, 2), q(0), q(0), q(0)}), q(3, 8)},
                   {cb({q(1, 4), q(1, 4), q(1, 4), q(1, 4)}), q(3, 8)},
                   {cb({q(1, 5), q(1, 5), q(1, 10), q(1, 10)}), q(9, 20)},
                   {cb({q(1, 6), q(1, 6), q(1, 6), q(0)}), q(11, 24)},
                   {cb({q(1, 7), q(1, 14), q(1, 14), q(1, 14)}), q(27, 56)},
                   {cb({q(0), q(0), q(0), q(0)}), q(1, 2)}});
}

struct Listed {
  Rational norm_sq;
  std::vector<Rational> beta;
  std::vector<const char*> vertices;  // bit 1 is +1/2
};

Verdict five_qubit_listing() {
  const std::vector<Listed> listing{
      {q(1, 76), {q(3, 38), q(1, 19), q(1, 19), q(1, 38), q(1, 38)}, {"01101", "01110", "10011", "10100", "11000"}},
      {q(1, 52), {q(3, 26), q(1, 26), q(1, 26), q(1, 26), q(1, 26)}, {"01111", "10001", "10011", "10100", "11000"}},
      {q(1, 44), {q(1, 11), q(1, 11), q(1, 22), q(1, 22), q(1, 22)}, {"01101", "01110", "10110", "10011", "11010"}},
      {q(1, 26), {q(2, 13), q(1, 13), q(1, 13), q(1, 26), q(1, 26)}, {"01111", "10011", "10100", "11000"}},
      {q(1, 20), {q(1, 10), q(1, 10), q(1, 10), q(1, 10), q(1, 10)}, {"01101", "01110", "10011", "11100"}},
      {q(1, 16), {q(3, 16), q(1, 8), q(1, 16), q(1, 16), q(1, 16)}, {"01111", "10011", "10101", "10110", "11000"}},
      {q(3, 28), {q(3, 14), q(3, 14), q(1, 14), q(1, 14), q(1, 14)}, {"01111", "10111", "11000"}},
      {q(1, 8), {q(1, 8), q(1, 8), q(1, 8), q(1, 4), q(1, 8)}, {"01110", "10011", "11101"}},
      {q(9, 44), {q(3, 11), q(3, 11), q(3, 22), q(3, 22), q(3, 22)}, {"01111", "10111", "11001", "11010", "11100"}},
      {q(2, 7), {q(2, 7), q(2, 7), q(2, 7), q(1, 7), q(1, 7)}, {"01111", "10111", "11101", "11100"}},
      {q(9, 20), {q(3, 10), q(3, 10), q(3, 10), q(3, 10), q(3, 10)}, {"01111", "10111", "11011", "11101", "11110"}},
  };

  Verdict v;
  std::map<CanonicalBeta, Rational> raw;
  for (const auto& p : enumerate(5, {.raw = true}).points) raw.emplace(p.beta, p.norm_sq);

  int found = 0, solved = 0;
  for (const auto& item : listing) {
    const auto beta = vec(item.beta);
    const auto canon = canonicalize(beta);
    const auto it = raw.find(canon);
    if (it == raw.end()) v.fail("raw L=5 lacks " + beta_string(canon));
    else if (it->second != item.norm_sq) v.fail(beta_string(canon) + " has |beta|^2 " + it->second.to_string());
    else ++found;
    if (squared_norm(beta) != item.norm_sq) v.fail("listed beta " + beta_string(canon) + " does not have the listed norm");

    std::vector<WeightVertex> subset;
    std::string off_plane;
    for (const char* b : item.vertices) {
      subset.push_back(parse_vertex(b));
      const auto alpha = subset.back().coordinates<Rational>();
      Rational dot(0);
      for (Eigen::Index k = 0; k < alpha.size(); ++k) dot += alpha(k) * beta(k);
      if (dot != item.norm_sq) off_plane += std::string(off_plane.empty() ? "" : ",") + b;
    }
    const auto s = solve_subset(subset);
    const auto* mc = std::get_if<MinimalCombination>(&s);
    const std::string why = off_plane.empty() ? "" : " (listed vertex " + off_plane + " is off the plane alpha.beta = |beta|^2)";
    if (!mc) v.fail("listed vertices for " + beta_string(canon) + " do not solve" + why);
    else if (mc->beta != beta) v.fail("listed vertices for " + beta_string(canon) + " solve to " + beta_string(canonicalize(mc->beta)) + why);
    else ++solved;
  }
  v.note(std::to_string(found) + "/11 present in raw L=5 (" + std::to_string(raw.size()) + " points), " +
         std::to_string(solved) + "/11 vertex sets solve directly");
  return v;
}

// Largest deviation of `ours` from `reference` after removing one phase per
// value of the last qubit (a global phase times diag(1, e^{i delta})).
double distance_up_to_last_qubit_phase(const StateVector& ours, const StateVector& reference) {
  std::complex<double> g[2] = {0.0, 0.0};
  for (Eigen::Index i = 0; i < reference.amplitudes.size(); ++i)
    if (std::abs(reference.amplitudes(i)) > 1e-12 && g[i & 1] == 0.0) g[i & 1] = ours.amplitudes(i) / reference.amplitudes(i);
  double worst = std::abs(std::abs(g[0]) - 1.0) + std::abs(std::abs(g[1]) - 1.0);
  for (Eigen::Index i = 0; i < reference.amplitudes.size(); ++i)
    worst = std::max(worst, std::abs(ours.amplitudes(i) - g[i & 1] * reference.amplitudes(i)));
  return worst;
}

Verdict states() {
  Verdict v;
  const Tolerances tol;  // 1e-10 equality, 1e-9 residual
  int checked = 0;
  double worst_residual = 0.0;
  for (int L = 1; L <= 4; ++L)
    for (const auto& p : enumerate(L).points) {
      ++checked;
      try {
        const auto built = construct_state(p, tol.solver);
        const auto r = verify_state(built.state, p, tol);
        worst_residual = std::max(worst_residual, r.eigen_residual);
        if (!r.pass) v.fail("L=" + std::to_string(L) + " " + beta_string(p.beta) + " fails verification");
      } catch (const std::exception& e) {
        v.fail("L=" + std::to_string(L) + " " + beta_string(p.beta) + ": " + e.what());
      }
    }
  v.note(std::to_string(checked) + " states for L<=4, worst residual " + [&] {
    std::ostringstream s;
    s << worst_residual;
    return s.str();
  }());

  const auto beta = cb({q(1, 6), q(1, 6), q(1, 6), q(0)});
  const auto ours = boundary_state(beta, tol.solver);
  StateVector reference{4, Amplitudes::Zero(16)};
  const double r6 = 1 / std::sqrt(6.0);
  const auto w = std::polar(1.0, 2 * std::numbers::pi / 3);
  for (const char* b : {"1100", "1010", "0110", "1101"}) reference.amplitudes(parse_vertex(b).label) = r6;
  reference.amplitudes(parse_vertex("1011").label) = r6 * w;
  reference.amplitudes(parse_vertex("0111").label) = r6 * w * w;
  const double d = distance_up_to_last_qubit_phase(ours, reference);
  const auto point = make_critical_point(beta);
  if (d > 1e-12) v.fail("(1/6, 1/6, 1/6, 0) example differs beyond a local phase (" + std::to_string(d) + ")");
  if (!verify_state(ours, point, tol).pass) v.fail("constructed (1/6, 1/6, 1/6, 0) state fails verification");
  if (!verify_state(reference, point, tol).pass) v.fail("reference (1/6, 1/6, 1/6, 0) state fails verification");
  if (v.pass) v.note("(1/6, 1/6, 1/6, 0) example reproduced up to phase and verified");
  return v;
}

Verdict closure() {
  Verdict v;
  for (int L = 2; L <= 4; ++L) {
    const auto raw = enumerate(L, {.raw = true});
    const auto next = beta_set(enumerate(L + 1, {.raw = true}));
    const auto ext = extend_iteratively(std::span<const CriticalPoint>(raw.points));
    std::size_t missing = 0;
    for (const auto& c : ext)
      if (!next.count(c)) {
        ++missing;
        v.fail("L=" + std::to_string(L + 1) + " lacks " + beta_string(c));
      }
    v.note("L=" + std::to_string(L) + ": " + std::to_string(ext.size() - missing) + "/" + std::to_string(ext.size()) +
           " extensions present");
  }
  return v;
}

Verdict oracle_match() {
  Verdict v;
  for (int L = 2; L <= 4; ++L)
    for (bool raw : {false, true}) {
      std::set<CanonicalBeta> reference;
      for (const auto& b : oracle::minimal_combinations(L, raw)) {
        CanonicalBeta c;
        for (const auto& x : b) c.components.emplace_back(x);
        reference.insert(c);
      }
      const auto ours = beta_set(enumerate(L, {.raw = raw}));
      const std::string tag = "L=" + std::to_string(L) + (raw ? " raw" : "");
      if (ours != reference)
        v.fail(tag + ": " + std::to_string(ours.size()) + " vs oracle " + std::to_string(reference.size()));
      else
        v.note(tag + " " + std::to_string(ours.size()));
    }
  return v;
}

Verdict determinism() {
  Verdict v;
  for (int L = 1; L <= 5; ++L) {
    std::string first;
    int runs = 0;
    for (auto sym : {Symmetry::off, Symmetry::on})
      for (int workers : {1, 4, 8}) {
        const auto text = format_points(L, enumerate(L, {.symmetry = sym, .workers = workers}).points, Format::json);
        if (runs++ == 0) first = text;
        else if (text != first)
          v.fail("L=" + std::to_string(L) + " differs for symmetry " + (sym == Symmetry::on ? "on" : "off") +
                 ", workers " + std::to_string(workers));
      }
  }
  if (v.pass) v.note("JSON identical across workers 1/4/8 and both symmetry modes for L=1..5");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"critical value counts", counts},
      {"three-qubit table", table_three},
      {"four-qubit table", table_four},
      {"five-qubit vertex listing", five_qubit_listing},
      {"state construction and verification", states},
      {"closure under extension", closure},
      {"oracle equivalence", oracle_match},
      {"determinism", determinism},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    all = all && v.pass;
    std::cout << "criterion " << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << " [" << criteria[i].first << ", "
              << fixed(since(t0)) << " s] " << v.detail << std::endl;
  }
  return all ? 0 : 1;
}
