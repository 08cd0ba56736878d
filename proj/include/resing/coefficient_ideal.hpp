#pragma once

#include <vector>

#include "resing/polynomial.hpp"

namespace resing {

/// For f = z^k + a_1 z^{k-1} + ... + a_k: the coefficients a_i and the
/// generators a_i^{k!/i} of the auxiliary ideal one dimension down.
struct CoefficientIdealData {
  std::uint32_t k = 0;
  std::uint64_t k_factorial = 1;
  std::vector<Polynomial> coefficients;
  std::vector<Polynomial> powered_coefficients;
};

inline std::uint64_t factorial(std::uint32_t k) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 2; i <= k; ++i) r *= i;
  return r;
}

inline CoefficientIdealData coefficient_ideal(const Polynomial& f, std::size_t z) {
  const auto& ring = f.ring();
  if (z >= ring->size()) throw DomainError("main variable index out of range");
  if (f.is_zero()) throw DomainError("coefficient ideal of the zero polynomial");
  const std::uint32_t k = f.degree_in(z);
  if (k == 0) throw DomainError("polynomial has degree 0 in the main variable");
  if (k > 20) throw DomainError("main-variable degree too large for k!");

  CoefficientIdealData data;
  data.k = k;
  data.k_factorial = factorial(k);
  std::vector<Polynomial> by_power(k + 1, Polynomial::zero(ring));
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    rest[z] = 0;
    by_power[e[z]].add_term(rest, c);
  }
  if (!(by_power[k] == Polynomial::constant(ring, 1)))
    throw DomainError("polynomial is not monic in " + ring->name(z));

  for (std::uint32_t i = 1; i <= k; ++i) {
    data.coefficients.push_back(by_power[k - i]);
    data.powered_coefficients.push_back(by_power[k - i].pow(data.k_factorial / i));
  }
  return data;
}

/// Evaluates both sides of
///   ord_0(f) = k  <=>  ord_0(a_i^{k!/i}) >= k! for every i
/// independently and reports whether they agree. A false result is a bug.
inline bool check_order_equivalence(const Polynomial& f, std::size_t z) {
  const auto data = coefficient_ideal(f, z);
  const bool lhs = f.order_at_origin() == ExtendedNat(data.k);
  bool rhs = true;
  for (const auto& g : data.powered_coefficients)
    if (g.order_at_origin() < ExtendedNat(data.k_factorial)) rhs = false;
  return lhs == rhs;
}

}  // namespace resing
