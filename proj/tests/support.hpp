#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "resing/parse.hpp"

namespace testing_support {

inline resing::RingPtr ring(std::vector<std::string> names, std::uint64_t p = 0) {
  return resing::make_ring(std::move(names), resing::FieldSpec(p));
}

inline resing::Polynomial P(const std::string& text, const resing::RingPtr& r) {
  return resing::parse_polynomial(text, r);
}

inline oracle::Poly to_oracle(const resing::Polynomial& f) {
  oracle::Poly p(f.ring()->size());
  for (const auto& [e, c] : f.terms()) p.add(std::vector<int>(e.begin(), e.end()), c);
  return p;
}

inline resing::Polynomial from_oracle(const oracle::Poly& p, const resing::RingPtr& r) {
  resing::Polynomial f(r);
  for (const auto& [e, c] : p.t) f.add_term(resing::Exponent(e.begin(), e.end()), c);
  return f;
}

}  // namespace testing_support
