#include "qcrit/hypercube.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcrit {

std::string WeightVertex::bits() const {
  std::string s(static_cast<std::size_t>(qubits), '0');
  for (int k = 0; k < qubits; ++k) s[static_cast<std::size_t>(k)] = bit(k) ? '1' : '0';
  return s;
}

std::string WeightVertex::to_string() const {
  std::string s = "[";
  for (int k = 0; k < qubits; ++k) {
    if (k > 0) s += ", ";
    s += bit(k) ? "1/2" : "-1/2";
  }
  return s + "]";
}

void check_qubits(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits)
    throw std::out_of_range("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                            std::to_string(qubits));
}

std::vector<WeightVertex> vertices(int qubits) {
  check_qubits(qubits);
  std::vector<WeightVertex> out;
  out.reserve(std::size_t{1} << qubits);
  for (Label b = 0; b < (Label{1} << qubits); ++b) out.push_back({b, qubits});
  return out;
}

WeightVertex parse_vertex(std::string_view bits) {
  const int qubits = static_cast<int>(bits.size());
  check_qubits(qubits);
  Label label = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("vertex label must be a bit string: '" + std::string(bits) + "'");
    label = (label << 1) | static_cast<Label>(c - '0');
  }
  return {label, qubits};
}

RationalVector CanonicalBeta::vector() const {
  RationalVector v(static_cast<Eigen::Index>(components.size()));
  for (std::size_t i = 0; i < components.size(); ++i) v(static_cast<Eigen::Index>(i)) = components[i];
  return v;
}

CanonicalBeta canonicalize(const RationalVector& beta) {
  CanonicalBeta out;
  out.components.reserve(static_cast<std::size_t>(beta.size()));
  for (Eigen::Index i = 0; i < beta.size(); ++i) out.components.push_back(abs(beta(i)));
  std::sort(out.components.begin(), out.components.end(), std::greater<>());
  return out;
}

bool affinely_independent(std::span<const Label> labels, int qubits) {
  // Rows (2*alpha, 1) with entries +-1 and 1; integer Bareiss rank.
  const std::size_t rows = labels.size();
  const std::size_t cols = static_cast<std::size_t>(qubits) + 1;
  if (rows > cols) return false;
  std::vector<__int128> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int k = 0; k < qubits; ++k) m[i * cols + static_cast<std::size_t>(k)] = ((labels[i] >> (qubits - 1 - k)) & 1U) ? 1 : -1;
    m[i * cols + cols - 1] = 1;
  }
  __int128 previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m[i * cols + c] != 0) { pivot = i; break; }
    }
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[r * cols + j], m[pivot * cols + j]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i * cols + j] = (m[i * cols + j] * m[r * cols + c] - m[i * cols + c] * m[r * cols + j]) / previous;
      m[i * cols + c] = 0;
    }
    previous = m[r * cols + c];
    ++r;
  }
  return r == rows;
}

SignedPermutationGroup::SignedPermutationGroup(int qubits) : qubits_(qubits) {
  check_qubits(qubits);
  if (qubits > kMaxSymmetryQubits)
    throw std::out_of_range("symmetry reduction supports at most " + std::to_string(kMaxSymmetryQubits) + " qubits");

  const std::size_t labels = std::size_t{1} << qubits;
  std::vector<int> perm(static_cast<std::size_t>(qubits));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::size_t x = 0; x < labels; ++x) {
      Label image = 0;
      for (int b = 0; b < qubits; ++b)
        if ((x >> b) & 1U) image |= Label{1} << perm[static_cast<std::size_t>(b)];
      images_.push_back(static_cast<std::uint8_t>(image));
    }
    ++permutation_count_;
  } while (std::next_permutation(perm.begin(), perm.end()));

  to_low_bits_.resize(labels);
  for (std::size_t p = 0; p < permutation_count_; ++p) {
    for (std::size_t t = 0; t < labels; ++t) {
      const Label low = (Label{1} << std::popcount(t)) - 1;
      if (images_[p * labels + t] == low) to_low_bits_[t].push_back(static_cast<std::uint16_t>(p));
    }
  }
}

bool SignedPermutationGroup::is_canonical(std::span<const Label> s, std::uint64_t* automorphisms) const {
  const std::size_t k = s.size();
  if (k == 0) return true;
  if (k > 2 * kMaxSymmetryQubits + 2) throw std::invalid_argument("is_canonical: set too large");
  // Every orbit contains a set through label 0, so a canonical set starts there.
  if (s[0] != 0) return false;
  if (k == 1) {
    if (automorphisms) *automorphisms = permutation_count_;
    return true;
  }

  int min_distance = qubits_ + 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) min_distance = std::min(min_distance, std::popcount(s[i] ^ s[j]));
  // The second-smallest element of any image is at least 2^d - 1, and some
  // image attains it.
  const Label second = (Label{1} << min_distance) - 1;
  if (s[1] != second) return false;

  std::uint64_t stabilizer = 0;
  std::array<Label, 2 * kMaxSymmetryQubits + 2> shifted{};
  std::array<Label, 2 * kMaxSymmetryQubits + 2> image{};
  for (std::size_t f = 0; f < k; ++f) {
    const Label flip = s[f];
    for (std::size_t i = 0; i < k; ++i) shifted[i] = s[i] ^ flip;
    for (std::size_t ti = 0; ti < k; ++ti) {
      if (std::popcount(shifted[ti]) != min_distance) continue;
      for (const std::uint16_t p : to_low_bits_[shifted[ti]]) {
        const std::uint8_t* table = images_.data() + std::size_t{p} * (std::size_t{1} << qubits_);
        for (std::size_t i = 0; i < k; ++i) image[i] = table[shifted[i]];
        // Insertion sort; k is at most L + 1.
        for (std::size_t i = 1; i < k; ++i) {
          const Label v = image[i];
          std::size_t j = i;
          for (; j > 0 && image[j - 1] > v; --j) image[j] = image[j - 1];
          image[j] = v;
        }
        int c = 0;
        for (std::size_t i = 2; i < k; ++i) {
          if (image[i] != s[i]) { c = image[i] < s[i] ? -1 : 1; break; }
        }
        if (c < 0) return false;
        if (c == 0) ++stabilizer;
      }
    }
  }
  if (automorphisms) *automorphisms = stabilizer;
  return true;
}

std::vector<std::vector<Label>> SignedPermutationGroup::orbit(std::span<const Label> labels) const {
  std::set<std::vector<Label>> seen;
  for (Label flip = 0; flip < (Label{1} << qubits_); ++flip) {
    for (std::size_t p = 0; p < permutation_count_; ++p) {
      std::vector<Label> img;
      img.reserve(labels.size());
      for (Label x : labels) img.push_back(apply(flip, p, x));
      std::sort(img.begin(), img.end());
      seen.insert(std::move(img));
    }
  }
  return {seen.begin(), seen.end()};
}

SubsetStream::SubsetStream(int qubits, int max_size, Symmetry symmetry)
    : qubits_(qubits), max_size_(max_size), symmetry_(symmetry) {
  check_qubits(qubits);
  if (max_size < 1) throw std::invalid_argument("subset size must be at least 1");
  unit_depth_ = std::min(max_size, symmetry == Symmetry::on ? 3 : 2);
  if (symmetry == Symmetry::on) group_ = std::make_shared<SignedPermutationGroup>(qubits);
}

bool SubsetStream::admissible(std::span<const Label> labels) const {
  return symmetry_ == Symmetry::off || group_->is_canonical(labels);
}

std::vector<std::vector<Label>> subsets(int qubits, int k, Symmetry symmetry) {
  std::vector<std::vector<Label>> out;
  if (k < 1) return out;
  SubsetStream stream(qubits, k, symmetry);
  stream.for_each([&](std::span<const Label> labels) {
    if (!affinely_independent(labels, qubits)) return false;
    if (static_cast<int>(labels.size()) == k) out.emplace_back(labels.begin(), labels.end());
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcrit
