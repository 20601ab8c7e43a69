#include "qp_oracle.hpp"

#include <algorithm>
#include <functional>

namespace oracle {

mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

int rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

namespace {

using Point = std::vector<mpq_class>;

mpq_class dot(const Point& a, const Point& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Closest point of aff(F) to the origin with weights summing to one, if the
// bordered system is regular.
bool project_affine(const std::vector<Point>& f, std::vector<mpq_class>& weights) {
  const std::size_t k = f.size();
  std::vector<std::vector<mpq_class>> a(k + 1, std::vector<mpq_class>(k + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = dot(f[i], f[j]);
    a[i][k] = 1;
    a[k][i] = 1;
  }
  const mpq_class d = determinant(a);
  if (d == 0) return false;
  weights.assign(k, 0);
  for (std::size_t col = 0; col < k; ++col) {
    auto ai = a;
    for (std::size_t r = 0; r <= k; ++r) ai[r][col] = r == k ? 1 : 0;
    weights[col] = determinant(ai) / d;
  }
  return true;
}

Beta canonical(Point b) {
  for (auto& x : b) x = abs(x);
  std::sort(b.begin(), b.end(), std::greater<>());
  return b;
}

bool excluded(const Beta& b) {
  const mpq_class half(1, 2);
  if (b.back() != 0) return false;
  return std::all_of(b.begin(), b.end() - 1, [&](const mpq_class& x) { return x == half; });
}

}  // namespace

std::set<Beta> minimal_combinations(int qubits, bool raw) {
  const std::size_t n = std::size_t{1} << qubits;
  std::vector<Point> verts(n, Point(static_cast<std::size_t>(qubits)));
  for (std::size_t b = 0; b < n; ++b)
    for (int k = 0; k < qubits; ++k)
      verts[b][static_cast<std::size_t>(k)] = ((b >> (qubits - 1 - k)) & 1U) ? mpq_class(1, 2) : mpq_class(-1, 2);

  std::set<Beta> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    if (!pick.empty()) {
      std::vector<std::vector<mpq_class>> lifted;
      for (std::size_t i : pick) {
        auto row = verts[i];
        row.push_back(1);
        lifted.push_back(row);
      }
      if (rank(lifted) != static_cast<int>(pick.size())) return;

      const std::size_t k = pick.size();
      bool found = false;
      for (std::size_t mask = 1; mask < (std::size_t{1} << k) && !found; ++mask) {
        std::vector<Point> face;
        for (std::size_t i = 0; i < k; ++i)
          if ((mask >> i) & 1U) face.push_back(verts[pick[i]]);
        std::vector<mpq_class> w;
        if (!project_affine(face, w)) continue;
        if (std::any_of(w.begin(), w.end(), [](const mpq_class& x) { return x <= 0; })) continue;
        Point beta(static_cast<std::size_t>(qubits), 0);
        for (std::size_t i = 0; i < face.size(); ++i)
          for (std::size_t c = 0; c < beta.size(); ++c) beta[c] += w[i] * face[i][c];
        const mpq_class nn = dot(beta, beta);
        bool optimal = true;
        for (std::size_t i : pick) optimal = optimal && dot(verts[i], beta) >= nn;
        if (!optimal) continue;
        found = true;
        Beta c = canonical(beta);
        if (raw || !excluded(c)) out.insert(c);
      }
      if (!found) throw std::logic_error("no optimal face");
      if (static_cast<int>(k) == qubits + 1) return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      visit(i + 1);
      pick.pop_back();
    }
  };
  visit(0);
  return out;
}

}  // namespace oracle
