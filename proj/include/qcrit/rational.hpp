// rational.hpp
// Exact rational scalar backed by GMP, usable as an Eigen scalar type.

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace qcrit {

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator. Equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: implicit by design of a scalar
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long numerator, long denominator);
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p/q", "p", or "-p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& gmp() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when q == 1.
  std::string to_string() const;

  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

 private:
  mpq_class value_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace qcrit

namespace Eigen {

template <>
struct NumTraits<qcrit::Rational> : GenericNumTraits<qcrit::Rational> {
  using Real = qcrit::Rational;
  using NonInteger = qcrit::Rational;
  using Nested = qcrit::Rational;
  using Literal = qcrit::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qcrit {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

}  // namespace qcrit
