#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "resing/field.hpp"
#include "resing/polynomial.hpp"

namespace resing {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rational& a) { return UPoly({a}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& t) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  UPoly scaled(const Rational& s) const {
    auto r = c_;
    for (auto& v : r) v *= s;
    return UPoly(std::move(r));
  }

  /// Quotient and remainder of a / b.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
    for (long i = a.degree() - b.degree(); i >= 0; --i) {
      Rational q = rem[i + b.degree()] / b.leading();
      quo[i] = q;
      if (q == 0) continue;
      for (long j = 0; j <= b.degree(); ++j) rem[i + j] -= q * b.c_[j];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }

  UPoly monic() const { return is_zero() ? *this : scaled(Rational(1) / leading()); }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * i;
    return UPoly(std::move(r));
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// a * s + m * t = gcd(a, m), returns (gcd, s).
inline std::pair<UPoly, UPoly> extended_gcd(const UPoly& a, const UPoly& m) {
  UPoly r0 = a, r1 = m, s0 = UPoly::constant(1), s1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  Rational lc = r0.leading();
  return {r0.scaled(Rational(1) / lc), s0.scaled(Rational(1) / lc)};
}

inline UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return f.monic();
  return (f / gcd(f, f.derivative())).monic();
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n <= Integer(std::numeric_limits<std::uint64_t>::max() >> 2)) {
    const auto m = static_cast<std::uint64_t>(n);
    std::vector<Integer> small, large;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
      if (d > 100'000'000) throw DomainError("coefficient too large to enumerate rational root candidates");
      if (m % d == 0) {
        small.emplace_back(d);
        if (d * d != m) large.emplace_back(m / d);
      }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
  }
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (d > 10'000'000) throw DomainError("coefficient too large to enumerate rational root candidates");
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Distinct rational roots, ascending.
inline std::vector<Rational> rational_roots(const UPoly& f) {
  if (f.is_zero()) throw DomainError("rational roots of the zero polynomial");
  std::vector<Rational> roots;
  UPoly g = squarefree_part(f);
  if (g.degree() <= 0) return roots;
  // clear denominators
  Integer lcm = 1;
  for (const auto& c : g.coeffs()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  std::vector<Integer> ints;
  for (const auto& c : g.coeffs()) ints.push_back(numerator(c * Rational(lcm)));
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  std::set<Rational> found;
  for (const auto& p : detail::positive_divisors(ints[low]))
    for (const auto& q : detail::positive_divisors(ints.back()))
      for (int sign : {1, -1}) {
        Rational r(Integer(sign) * p, q);
        if (!found.count(r) && g.eval(r) == 0) found.insert(r);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// f with every rational linear factor divided out (f squarefree).
inline UPoly strip_rational_roots(UPoly f, const std::vector<Rational>& roots) {
  for (const auto& r : roots) f = f / UPoly({-r, Rational(1)});
  return f;
}

/// Polynomial in y with coefficients in Q[x]: entries indexed by y-degree.
using BPoly = std::vector<UPoly>;

inline BPoly to_bpoly(const Polynomial& f) {
  if (f.ring()->size() != 2) throw DomainError("bivariate conversion needs a two-variable ring");
  if (!f.ring()->field().is_rational()) throw DomainError("bivariate elimination works over Q only");
  BPoly out(f.degree_in(1) + 1);
  std::vector<std::vector<Rational>> raw(out.size(), std::vector<Rational>(f.degree_in(0) + 1));
  for (const auto& [e, c] : f.terms()) raw[e[1]][e[0]] = c;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = UPoly(raw[j]);
  if (f.is_zero()) out.clear();
  return out;
}

inline long y_degree(const BPoly& p) { return static_cast<long>(p.size()) - 1; }

inline long x_degree(const BPoly& p) {
  long d = -1;
  for (const auto& c : p) d = std::max(d, c.degree());
  return d;
}

/// f(t, y) as a polynomial in y.
inline UPoly specialize_x(const BPoly& p, const Rational& t) {
  std::vector<Rational> c;
  for (const auto& coeff : p) c.push_back(coeff.eval(t));
  return UPoly(std::move(c));
}

namespace detail {

inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace detail

/// Resultant with respect to y, by evaluation at enough x values and
/// interpolation. Formal y-degrees are those of the representation.
inline UPoly resultant_y(const BPoly& a, const BPoly& b) {
  if (a.empty() || b.empty()) return {};
  const long m = y_degree(a), n = y_degree(b);
  const long bound = m * std::max(0L, x_degree(b)) + n * std::max(0L, x_degree(a));
  std::vector<Rational> xs, ys;
  for (long t = 0; t <= bound; ++t) {
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Rational>> syl(size, std::vector<Rational>(size, Rational(0)));
    for (long r = 0; r < n; ++r)
      for (long j = 0; j <= m; ++j) syl[r][r + (m - j)] = a[j].eval(Rational(t));
    for (long r = 0; r < m; ++r)
      for (long j = 0; j <= n; ++j) syl[n + r][r + (n - j)] = b[j].eval(Rational(t));
    xs.emplace_back(t);
    ys.push_back(size == 0 ? Rational(1) : detail::determinant(std::move(syl)));
  }
  // Newton interpolation
  std::vector<Rational> coef = ys;
  for (std::size_t level = 1; level < xs.size(); ++level)
    for (std::size_t i = xs.size() - 1; i >= level; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  UPoly result = UPoly::constant(coef.back());
  for (std::size_t i = coef.size() - 1; i-- > 0;) result = result * UPoly({-xs[i], Rational(1)}) + UPoly::constant(coef[i]);
  return result;
}

}  // namespace resing
