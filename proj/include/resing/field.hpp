#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "resing/errors.hpp"

namespace resing {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "n" or "n/d" with optional sign.
inline Rational rational_from_string(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(Integer(text.substr(0, slash))) / Rational(den);
  } catch (const std::runtime_error&) {
    throw DomainError("malformed rational '" + text + "'");
  }
}

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Ground field: Q for characteristic 0, F_p otherwise.
///
/// Coefficients are always carried as `Rational`. In characteristic p a
/// normalized coefficient is an integer in [0, p).
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::uint64_t characteristic) : p_(characteristic) {
    if (p_ != 0 && !detail::is_prime(p_))
      throw DomainError("characteristic " + std::to_string(p_) + " is neither 0 nor a prime");
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  Rational normalize(const Rational& q) const {
    if (p_ == 0) return q;
    Integer p(p_);
    Integer num = numerator(q) % p;
    if (num < 0) num += p;
    Integer den = denominator(q) % p;
    if (den == 0)
      throw DomainError("coefficient " + to_string(q) + " has a denominator divisible by " +
                        std::to_string(p_));
    return Rational((num * inverse_mod(den, p)) % p);
  }

  Rational add(const Rational& a, const Rational& b) const { return normalize(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return normalize(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return normalize(a * b); }
  Rational neg(const Rational& a) const { return normalize(-a); }
  Rational inv(const Rational& a) const {
    if (a == 0) throw DomainError("division by zero");
    return normalize(Rational(1) / a);
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  static Integer inverse_mod(Integer a, const Integer& m) {
    Integer t = 0, new_t = 1, r = m, new_r = a;
    while (new_r != 0) {
      Integer quotient = r / new_r;
      Integer tmp = t - quotient * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - quotient * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += m;
    return t;
  }

  std::uint64_t p_ = 0;
};

}  // namespace resing
