#include "qcrit/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qcrit {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, 1) / mpq_class(denominator, 1);
  value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text), mpz_class(1));
  const auto num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  const auto den = parse_integer(den_text, text);
  if (den == 0) throw std::invalid_argument("malformed rational: zero denominator");
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace qcrit
