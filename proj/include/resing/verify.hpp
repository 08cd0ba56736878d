#pragma once

#include <random>
#include <string>
#include <vector>

#include "resing/binomial.hpp"
#include "resing/curve.hpp"
#include "resing/tree.hpp"

namespace resing {

struct VerifyOptions {
  std::size_t samples_per_chart = 20;
  std::uint64_t seed = 0x5eed;
};

struct VerifyReport {
  std::size_t charts = 0;
  std::size_t points_checked = 0;
  std::size_t points_on_variety = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

inline Rational random_coordinate(std::mt19937_64& rng, const FieldSpec& field, bool integral) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 3);
  return field.normalize(Rational(num(rng), integral ? 1 : den(rng)));
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, const FieldSpec& field, std::size_t n,
                                          bool integral = false) {
  std::vector<Rational> p(n);
  for (auto& v : p) v = random_coordinate(rng, field, integral);
  return p;
}

// g restricted to the line through `point` parallel to axis v, as a
// univariate polynomial in x_v (char 0 only).
inline UPoly restrict_to_axis(const Polynomial& g, const std::vector<Rational>& point, std::size_t v) {
  std::vector<Rational> c(g.degree_in(v) + 1);
  for (const auto& [e, coeff] : g.terms()) {
    Rational t = coeff;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != v)
        for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    c[e[v]] += t;
  }
  return UPoly(std::move(c));
}

// Rational root candidates of u can be enumerated quickly.
inline bool small_root_search(const UPoly& u) {
  Integer lcm = 1;
  for (const auto& c : u.coeffs()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  const Integer bound = 100'000'000;
  auto low = std::find_if(u.coeffs().begin(), u.coeffs().end(), [](const Rational& c) { return c != 0; });
  return boost::multiprecision::abs(numerator(*low * Rational(lcm))) <= bound &&
         boost::multiprecision::abs(numerator(u.leading() * Rational(lcm))) <= bound;
}

// A point of V(g) found by fixing all coordinates but one and solving.
inline std::optional<std::vector<Rational>> random_point_on(const Polynomial& g, std::mt19937_64& rng) {
  const auto& field = g.ring()->field();
  const std::size_t n = g.ring()->size();
  if (g.is_constant()) return std::nullopt;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto p = random_point(rng, field, n, true);
    std::vector<std::size_t> linear, any;
    for (std::size_t i = 0; i < n; ++i) {
      if (g.degree_in(i) == 1) linear.push_back(i);
      if (g.degree_in(i) >= 1) any.push_back(i);
    }
    const auto& pool = linear.empty() ? any : linear;
    const std::size_t v = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    if (field.is_rational()) {
      UPoly u = restrict_to_axis(g, p, v);
      if (u.degree() <= 0) continue;
      if (!small_root_search(u)) continue;
      const auto roots = rational_roots(u);
      if (roots.empty()) continue;
      p[v] = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
      return p;
    }
    if (field.characteristic() > 4096) continue;
    for (std::uint64_t a = 0; a < field.characteristic(); ++a) {
      p[v] = Rational(a);
      if (g.evaluate(p) == 0) return p;
    }
  }
  return std::nullopt;
}

inline bool off_divisors(const Chart& c, const std::vector<Rational>& p) {
  for (const auto& d : c.exceptional)
    if (d.equation.evaluate(p) == 0) return false;
  return true;
}

}  // namespace detail

/// Final charts really are terminal for the tree's resolver.
inline bool chart_is_terminal(const ChartTree& tree, std::size_t id) {
  const Chart& c = tree.node(id);
  if (c.empty_variety) return true;
  switch (tree.kind()) {
    case TreeKind::binomial: return is_locally_monomial(c);
    case TreeKind::curve: return c.ideal.front().is_constant() || singular_points(c.ideal.front()).empty();
    default: return true;
  }
}

/// Re-checks a stored tree: structure, terminal soundness of the final
/// charts, strict invariant decrease along edges, and that off the
/// exceptional divisors each chart generator vanishes exactly where the
/// corresponding root generator vanishes under the images map.
inline VerifyReport verify_tree(const ChartTree& tree, const VerifyOptions& options = {}) {
  VerifyReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };
  try {
    tree.validate(true);
  } catch (const Error& e) {
    fail(std::string("structure: ") + e.what());
    return report;
  }
  std::mt19937_64 rng(options.seed);
  const Chart& root = tree.root();
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const Chart& c = tree.node(id);
    ++report.charts;
    const std::string where = "chart " + std::to_string(id);
    if (c.final) {
      try {
        if (!chart_is_terminal(tree, id)) fail(where + ": final chart is not terminal");
      } catch (const Error& e) {
        fail(where + ": terminal check failed: " + e.what());
      }
      if (c.invariant && !c.invariant->terminal()) fail(where + ": final chart has a non-terminal invariant");
    }
    if (c.parent) {
      const auto& pinv = tree.node(*c.parent).invariant;
      if (pinv && c.invariant && !(*c.invariant < *pinv))
        fail(where + ": invariant " + c.invariant->to_string() + " does not drop below " + pinv->to_string());
    }
    if (c.ideal.size() != root.ideal.size()) {
      fail(where + ": generator count differs from the root");
      continue;
    }
    if (!c.parent) continue;
    const FieldSpec& field = c.ambient->field();
    for (std::size_t k = 0, tries = 0; k < options.samples_per_chart && tries < 50 * options.samples_per_chart; ++tries) {
      std::optional<std::vector<Rational>> p;
      if (k % 2 == 0 && !c.ideal.empty()) {
        const auto& g = c.ideal[(k / 2) % c.ideal.size()];
        p = detail::random_point_on(g, rng);
      }
      if (!p) p = detail::random_point(rng, field, c.ambient->size());
      if (!detail::off_divisors(c, *p)) continue;
      ++k;
      ++report.points_checked;
      std::vector<Rational> image;
      for (const auto& img : c.images) image.push_back(img.evaluate(*p));
      bool on = true;
      for (std::size_t g = 0; g < c.ideal.size(); ++g) {
        const bool chart_zero = c.ideal[g].evaluate(*p) == 0;
        const bool root_zero = root.ideal[g].evaluate(image) == 0;
        on = on && chart_zero;
        if (chart_zero != root_zero) {
          std::string coords;
          for (const auto& x : *p) coords += (coords.empty() ? "" : ",") + to_string(x);
          fail(where + ": generator " + std::to_string(g + 1) + " disagrees with the root at (" + coords + ")");
        }
      }
      if (on) ++report.points_on_variety;
    }
  }
  return report;
}

}  // namespace resing
