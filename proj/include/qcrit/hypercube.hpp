// hypercube.hpp
// Weight vertices {-1/2,+1/2}^L, canonical beta vectors, and the stream of
// affinely independent vertex subsets (optionally reduced to one lex-minimal
// representative per orbit of the signed-permutation group).
//
// Basis-label convention: qubit 0 is the most significant bit of the label,
// b = sum_k i_k 2^(L-1-k). Coordinate k is +1/2 iff bit i_k is 1.

#pragma once

#include "qcrit/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qcrit {

inline constexpr int kMaxQubits = 16;
inline constexpr int kMaxSymmetryQubits = 8;

using Label = std::uint32_t;

enum class Symmetry { off, on };

/// A hypercube vertex, identified with the computational basis state |label>.
struct WeightVertex {
  Label label = 0;
  int qubits = 0;

  bool bit(int qubit) const { return (label >> (qubits - 1 - qubit)) & 1U; }
  /// +1 or -1: the sign of coordinate `qubit`.
  int sign(int qubit) const { return bit(qubit) ? 1 : -1; }

  template <typename Scalar>
  Vector<Scalar> coordinates() const {
    Vector<Scalar> v(qubits);
    for (int k = 0; k < qubits; ++k) v(k) = bit(k) ? Scalar(1) / Scalar(2) : Scalar(-1) / Scalar(2);
    return v;
  }

  /// The label as a bit string, e.g. "011".
  std::string bits() const;
  /// Bracketed coordinates, e.g. "[-1/2, 1/2, 1/2]".
  std::string to_string() const;

  friend auto operator<=>(const WeightVertex&, const WeightVertex&) = default;
};

/// Checks 1 <= qubits <= kMaxQubits; throws std::out_of_range otherwise.
void check_qubits(int qubits);

/// All 2^L vertices in increasing label order.
std::vector<WeightVertex> vertices(int qubits);

/// Parses a bit string ("011") into a vertex.
WeightVertex parse_vertex(std::string_view bits);

/// Orbit key of a beta vector: absolute values sorted non-increasingly.
struct CanonicalBeta {
  std::vector<Rational> components;

  std::size_t size() const { return components.size(); }
  const Rational& operator[](std::size_t i) const { return components[i]; }
  bool boundary() const { return !components.empty() && components.back().is_zero(); }
  RationalVector vector() const;

  friend bool operator==(const CanonicalBeta&, const CanonicalBeta&) = default;
  friend std::strong_ordering operator<=>(const CanonicalBeta& a, const CanonicalBeta& b) {
    return std::lexicographical_compare_three_way(a.components.begin(), a.components.end(),
                                                  b.components.begin(), b.components.end());
  }
};

CanonicalBeta canonicalize(const RationalVector& beta);

/// True iff the vertices with these labels are affinely independent.
bool affinely_independent(std::span<const Label> labels, int qubits);

/// The hyperoctahedral group acting on labels: x -> perm(x xor flip).
/// Holds image tables for every qubit permutation, so it is limited to
/// kMaxSymmetryQubits.
class SignedPermutationGroup {
 public:
  explicit SignedPermutationGroup(int qubits);

  int qubits() const { return qubits_; }
  std::size_t permutation_count() const { return permutation_count_; }
  std::uint64_t order() const { return (std::uint64_t{1} << qubits_) * permutation_count_; }

  Label apply(Label flip, std::size_t permutation, Label x) const {
    return images_[permutation * (std::size_t{1} << qubits_) + (x ^ flip)];
  }

  /// Whether `sorted_labels` (strictly increasing) is the lexicographically
  /// least member of its orbit. When canonical and `automorphisms` is given,
  /// it receives the size of the set stabilizer.
  bool is_canonical(std::span<const Label> sorted_labels, std::uint64_t* automorphisms = nullptr) const;

  /// Every distinct image of the set, each sorted. Exponential; for tests.
  std::vector<std::vector<Label>> orbit(std::span<const Label> labels) const;

 private:
  int qubits_;
  std::size_t permutation_count_ = 0;
  std::vector<std::uint8_t> images_;
  // For each label t, the permutations mapping t onto the lowest popcount(t) bits.
  std::vector<std::vector<std::uint16_t>> to_low_bits_;
};

/// Depth-first stream of strictly increasing label sets of size 1..max_size.
///
/// A visitor `bool(std::span<const Label>)` is called once per admitted set;
/// returning false prunes every extension of that set. With Symmetry::on only
/// lex-minimal orbit representatives are produced (a set is canonical only if
/// its prefix without the largest element is).
///
/// The stream splits into independent work units: `split` visits every set
/// up to the unit depth serially and returns the admitted prefixes of exactly
/// that depth; `extend` then visits all proper extensions of one prefix.
/// Any partition of the prefixes across workers visits the same sets.
class SubsetStream {
 public:
  SubsetStream(int qubits, int max_size, Symmetry symmetry);

  int qubits() const { return qubits_; }
  int max_size() const { return max_size_; }
  Symmetry symmetry() const { return symmetry_; }
  int unit_depth() const { return unit_depth_; }
  const SignedPermutationGroup* group() const { return group_.get(); }

  template <typename Visitor>
  std::vector<std::vector<Label>> split(Visitor&& visit) const {
    std::vector<std::vector<Label>> prefixes;
    std::vector<Label> current;
    descend(current, unit_depth_, visit, &prefixes);
    return prefixes;
  }

  template <typename Visitor>
  void extend(const std::vector<Label>& prefix, Visitor&& visit) const {
    if (static_cast<int>(prefix.size()) >= max_size_) return;
    std::vector<Label> current = prefix;
    descend(current, max_size_, visit, nullptr);
  }

  /// Convenience: visit everything serially.
  template <typename Visitor>
  void for_each(Visitor&& visit) const {
    for (const auto& prefix : split(visit)) extend(prefix, visit);
  }

 private:
  bool admissible(std::span<const Label> labels) const;

  template <typename Visitor>
  void descend(std::vector<Label>& current, int depth_limit, Visitor& visit,
               std::vector<std::vector<Label>>* prefixes) const {
    const Label count = Label{1} << qubits_;
    const Label first = current.empty() ? 0 : current.back() + 1;
    const Label last = (current.empty() && symmetry_ == Symmetry::on) ? 1 : count;
    for (Label x = first; x < last; ++x) {
      current.push_back(x);
      if (admissible(current) && visit(std::span<const Label>(current))) {
        const int size = static_cast<int>(current.size());
        if (prefixes != nullptr && size == depth_limit) {
          prefixes->push_back(current);
        } else if (size < depth_limit) {
          descend(current, depth_limit, visit, prefixes);
        }
      }
      current.pop_back();
    }
  }

  int qubits_;
  int max_size_;
  Symmetry symmetry_;
  int unit_depth_;
  std::shared_ptr<const SignedPermutationGroup> group_;
};

/// Every affinely independent size-k subset (labels increasing), or one
/// representative per signed-permutation orbit when symmetry is on.
std::vector<std::vector<Label>> subsets(int qubits, int k, Symmetry symmetry);

}  // namespace qcrit
