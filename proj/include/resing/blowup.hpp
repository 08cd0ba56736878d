#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "resing/invariant.hpp"
#include "resing/polynomial.hpp"

namespace resing {

/// Coordinate-subspace center V(x_i - p_i : i in variables) of a chart.
/// An empty `point` means the subspace passes through the origin.
struct Center {
  std::vector<std::size_t> variables;
  std::vector<Rational> point;

  std::size_t dimension(std::size_t ambient_dimension) const { return ambient_dimension - variables.size(); }

  Rational coordinate(std::size_t k) const { return point.empty() ? Rational(0) : point[k]; }

  friend bool operator==(const Center&, const Center&) = default;
};

/// An exceptional divisor as seen in one chart. `birth` identifies the
/// blow-up that created it; `equation` is its local equation. `variable` names
/// the chart variable cutting it out, or is empty when the divisor is not a
/// coordinate hyperplane of the chart.
struct ExceptionalDivisor {
  std::string variable;
  std::size_t birth = 0;
  Polynomial equation;

  friend bool operator==(const ExceptionalDivisor&, const ExceptionalDivisor&) = default;
};

/// One affine chart of a blown-up space.
struct Chart {
  RingPtr ambient;
  std::vector<Polynomial> ideal;
  std::vector<ExceptionalDivisor> exceptional;
  /// Images of the original ring's variables, expressed in this chart.
  std::vector<Polynomial> images;

  std::optional<std::size_t> parent;
  /// Center of the producing blow-up, in the parent's coordinates.
  std::optional<Center> center;
  /// Index (in the parent ring) of the center variable that is kept in this chart.
  std::optional<std::size_t> chart_variable;
  std::optional<std::size_t> center_dim;
  bool final = false;
  bool empty_variety = false;
  std::optional<ResolutionInvariant> invariant;

  static Chart root(RingPtr ring, std::vector<Polynomial> ideal) {
    for (const auto& g : ideal)
      if (!same_ring(g.ring(), ring)) throw DomainError("root ideal generator lives in another ring");
    Chart c;
    c.ambient = ring;
    c.ideal = std::move(ideal);
    c.images = identity_images(ring);
    return c;
  }

  friend bool operator==(const Chart& a, const Chart& b) {
    return same_ring(a.ambient, b.ambient) && a.ideal == b.ideal && a.exceptional == b.exceptional &&
           a.images == b.images && a.parent == b.parent && a.center == b.center &&
           a.chart_variable == b.chart_variable && a.center_dim == b.center_dim && a.final == b.final &&
           a.empty_variety == b.empty_variety && a.invariant == b.invariant;
  }
};

enum class TransformKind { strict, weak };

struct BlowupOptions {
  TransformKind transform = TransformKind::strict;
  /// Weak transform: remove at most this power of the exceptional variable.
  /// Unset means the full power, which makes weak and strict coincide.
  std::optional<std::uint32_t> weak_power;
  /// Recorded on the new exceptional divisor.
  std::size_t birth = 0;
};

/// Largest k with x_var^k dividing f (f nonzero).
inline std::uint32_t variable_valuation(const Polynomial& f, std::size_t var) {
  if (f.is_zero()) throw DomainError("valuation of the zero polynomial");
  std::uint32_t k = f.terms().begin()->first.at(var);
  for (const auto& [e, c] : f.terms()) k = std::min(k, e[var]);
  return k;
}

/// Divides f by x_var^c.
inline Polynomial weak_transform(const Polynomial& f, std::size_t var, std::uint32_t c) {
  if (f.is_zero()) throw DomainError("transform of the zero polynomial");
  Exponent e(f.ring()->size(), 0);
  e.at(var) = c;
  return f.divided_by_monomial(e);
}

/// Divides f by the highest power of x_var dividing it.
inline Polynomial strict_transform(const Polynomial& f, std::size_t var) {
  return weak_transform(f, var, variable_valuation(f, var));
}

inline Polynomial strict_transform(const Polynomial& f, const std::string& variable) {
  auto idx = f.ring()->index_of(variable);
  if (!idx) throw DomainError("unknown exceptional variable '" + variable + "'");
  return strict_transform(f, *idx);
}

namespace detail {

inline std::string fresh_name(const std::string& name, const std::set<std::string>& taken) {
  std::string candidate = name + "'";
  while (taken.count(candidate)) candidate += "'";
  return candidate;
}

inline std::string coordinate_variable(const Polynomial& eq) {
  if (eq.term_count() != 1) return {};
  const auto& [e, c] = *eq.terms().begin();
  if (total_degree(e) != 1) return {};
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] == 1) return eq.ring()->name(i);
  return {};
}

inline Polynomial apply_transform(const Polynomial& total, std::size_t var, const BlowupOptions& options) {
  if (total.is_zero()) return total;
  std::uint32_t full = variable_valuation(total, var);
  std::uint32_t c = full;
  if (options.transform == TransformKind::weak && options.weak_power) c = std::min(full, *options.weak_power);
  return weak_transform(total, var, c);
}

}  // namespace detail

/// Blows up `chart` along `center`, one chart per center variable (in
/// ascending variable order). In the chart of x_j the substitution is
///   x_j -> p_j + x_j',   x_i -> p_i + x_j' * x_i'   (i in center, i != j);
/// variables whose meaning changes receive an extra prime.
inline std::vector<Chart> blow_up(const Chart& chart, const Center& center, const BlowupOptions& options = {}) {
  const RingPtr& ring = chart.ambient;
  const std::size_t n = ring->size();
  std::vector<std::size_t> vars = center.variables;
  if (!center.point.empty() && center.point.size() != vars.size())
    throw DomainError("center point has the wrong number of coordinates");
  for (auto v : vars)
    if (v >= n) throw DomainError("center variable index out of range");
  {
    auto sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("center variables must be distinct");
  }
  if (vars.size() < 2) throw DomainError("blowing up a center of codimension < 2 is the identity");

  std::vector<std::size_t> order(vars.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vars[a] < vars[b]; });

  std::vector<Chart> out;
  for (std::size_t jk : order) {
    const std::size_t j = vars[jk];
    std::set<std::string> taken(ring->names().begin(), ring->names().end());
    std::vector<std::string> names = ring->names();
    for (std::size_t k = 0; k < vars.size(); ++k) {
      std::size_t i = vars[k];
      if (i == j && center.coordinate(k) == 0) continue;
      names[i] = detail::fresh_name(ring->name(i), taken);
      taken.insert(names[i]);
    }
    RingPtr child_ring = make_ring(names, ring->field());

    std::vector<Polynomial> local = identity_images(child_ring);
    const Polynomial uj = Polynomial::variable(child_ring, j);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      std::size_t i = vars[k];
      Polynomial shift = Polynomial::constant(child_ring, center.coordinate(k));
      local[i] = (i == j ? uj : uj * Polynomial::variable(child_ring, i)) + shift;
    }

    Chart child;
    child.ambient = child_ring;
    for (const auto& img : chart.images) child.images.push_back(substitute(img, local));
    for (const auto& g : chart.ideal) child.ideal.push_back(detail::apply_transform(substitute(g, local), j, options));

    for (const auto& div : chart.exceptional) {
      Polynomial eq = substitute(div.equation, local);
      if (eq.is_zero()) throw InvariantViolation("exceptional divisor contains the center chart");
      eq = strict_transform(eq, j);
      if (eq.is_constant()) continue;  // not visible in this chart
      child.exceptional.push_back({detail::coordinate_variable(eq), div.birth, eq});
    }
    child.exceptional.push_back({child_ring->name(j), options.birth, uj});

    child.center = center;
    child.chart_variable = j;
    child.center_dim = center.dimension(n);
    out.push_back(std::move(child));
  }
  return out;
}

/// Chart listing with one "==== " section per component.
inline std::string show_chart(const Chart& chart) {
  std::ostringstream os;
  auto list = [&](const std::vector<Polynomial>& polys) {
    for (std::size_t i = 0; i < polys.size(); ++i) os << "_[" << i + 1 << "]=" << polys[i] << "\n";
  };
  os << "==== Ambient Space\n_[1]=0\n";
  os << "==== Ideal of Variety:\n";
  if (chart.ideal.empty()) os << "_[1]=0\n";
  list(chart.ideal);
  os << "==== Exceptional Divisors:\n";
  for (std::size_t i = 0; i < chart.exceptional.size(); ++i)
    os << "[" << i + 1 << "]:\n_[1]=" << chart.exceptional[i].equation << "\n";
  os << "==== Images of variables of original ring:\n";
  list(chart.images);
  return os.str();
}

}  // namespace resing
