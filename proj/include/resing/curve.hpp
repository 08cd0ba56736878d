#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "resing/blowup.hpp"
#include "resing/tree.hpp"
#include "resing/univariate.hpp"

namespace resing {

using Point2 = std::array<Rational, 2>;

/// Raised when a zero set that must be rational has a point over a proper
/// extension of Q. `degree` is the degree of the squarefree factor that
/// carries it (the minimal polynomial degree when that factor is irreducible).
class IrrationalPointError : public DomainError {
 public:
  explicit IrrationalPointError(std::size_t degree)
      : DomainError("irrational point detected (coordinate of algebraic degree " + std::to_string(degree) +
                    "); only rational points are supported"),
        degree_(degree) {}
  std::size_t degree() const noexcept { return degree_; }

 private:
  std::size_t degree_;
};

/// Affine plane curve V(f); f is assumed squarefree.
struct PlaneCurve {
  Polynomial f;

  explicit PlaneCurve(Polynomial poly) : f(std::move(poly)) {
    if (f.ring()->size() != 2) throw DomainError("a plane curve needs exactly two variables");
    if (f.is_zero()) throw DomainError("the zero polynomial does not define a curve");
  }
};

namespace detail {

// Arithmetic in (Q[x]/t)[y] for squarefree t. A zero divisor met while
// inverting splits t; the caller retries on both factors.
struct SplitFound {
  UPoly factor;
};

struct ModularY {
  UPoly t;

  UPoly inverse(const UPoly& a) const {
    auto [g, s] = extended_gcd(a % t, t);
    if (g.degree() > 0) throw SplitFound{g};
    return s % t;
  }

  // Reduced and monic; empty for zero.
  BPoly normalize(BPoly p) const {
    for (auto& c : p) c = c % t;
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    if (p.empty()) return p;
    UPoly inv = inverse(p.back());
    for (auto& c : p) c = (c * inv) % t;
    return p;
  }

  BPoly remainder(BPoly a, const BPoly& b) const {
    // b is monic
    while (!a.empty() && y_degree(a) >= y_degree(b)) {
      const long shift = y_degree(a) - y_degree(b);
      UPoly lead = a.back();
      for (long j = 0; j <= y_degree(b); ++j) a[j + shift] = (a[j + shift] - lead * b[j]) % t;
      while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    return normalize(std::move(a));
  }

  BPoly gcd(BPoly a, BPoly b) const {
    while (!b.empty()) {
      BPoly r = remainder(std::move(a), b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }
};

// Degree of a factor of t over whose roots all of `polys` have a common
// zero in y, or nullopt when there is none. t squarefree, free of rational roots.
inline std::optional<std::size_t> algebraic_common_zero(const UPoly& t, const std::vector<BPoly>& polys) {
  std::vector<UPoly> work{t};
  while (!work.empty()) {
    UPoly cur = work.back();
    work.pop_back();
    if (cur.degree() <= 0) continue;
    ModularY ring{cur};
    try {
      std::optional<BPoly> g;
      for (const auto& p : polys) {
        BPoly r = ring.normalize(p);
        if (r.empty()) continue;
        g = g ? ring.gcd(*g, r) : r;
        if (y_degree(*g) == 0) break;
      }
      if (!g) throw DomainError("common zero set contains a vertical line");
      if (y_degree(*g) >= 1) return static_cast<std::size_t>(cur.degree());
    } catch (const SplitFound& s) {
      work.push_back(s.factor.monic());
      work.push_back((cur / s.factor).monic());
    }
  }
  return std::nullopt;
}

inline Polynomial translated(const Polynomial& f, const Point2& q) {
  const auto& ring = f.ring();
  std::vector<Polynomial> shift{Polynomial::variable(ring, 0) + Polynomial::constant(ring, q[0]),
                                Polynomial::variable(ring, 1) + Polynomial::constant(ring, q[1])};
  return substitute(f, shift);
}

}  // namespace detail

/// All common zeros of `polys` (two-variable ring over Q), sorted by (x, y).
/// Throws IrrationalPointError when a common zero is not rational and
/// DomainError when the common zero set is not finite.
inline std::vector<Point2> common_rational_zeros(const std::vector<Polynomial>& polys) {
  std::vector<BPoly> bp;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return {};
    bp.push_back(to_bpoly(p));
  }
  if (bp.empty()) throw DomainError("common zero set is the whole plane");

  long max_y = 0;
  for (const auto& p : bp) max_y = std::max(max_y, y_degree(p));
  UPoly xs;
  if (max_y == 0) {
    for (const auto& p : bp) xs = gcd(xs, p[0]);
    if (xs.degree() > 0) throw DomainError("common zero set contains a vertical line");
    return {};
  }
  for (std::size_t i = 0; i < bp.size(); ++i)
    for (std::size_t j = i + 1; j < bp.size(); ++j) {
      if (y_degree(bp[i]) == 0 && y_degree(bp[j]) == 0) continue;
      UPoly r = resultant_y(bp[i], bp[j]);
      if (!r.is_zero()) xs = gcd(xs, r);
    }
  if (bp.size() == 1) throw DomainError("a single curve has infinitely many points");
  if (xs.is_zero()) throw DomainError("the polynomials share a curve component");
  if (xs.degree() <= 0) return {};

  xs = squarefree_part(xs);
  const auto x_roots = rational_roots(xs);
  UPoly rest = strip_rational_roots(xs, x_roots);
  if (rest.degree() > 0)
    if (auto deg = detail::algebraic_common_zero(rest, bp)) throw IrrationalPointError(*deg);

  std::vector<Point2> out;
  for (const auto& r : x_roots) {
    std::optional<UPoly> g;
    for (const auto& p : bp) {
      UPoly u = specialize_x(p, r);
      if (u.is_zero()) continue;
      g = g ? gcd(*g, u) : u.monic();
    }
    if (!g) throw DomainError("common zero set contains a vertical line");
    if (g->degree() <= 0) continue;
    UPoly sq = squarefree_part(*g);
    auto ys = rational_roots(sq);
    UPoly left = strip_rational_roots(sq, ys);
    if (left.degree() > 0) throw IrrationalPointError(static_cast<std::size_t>(left.degree()));
    for (const auto& y : ys) out.push_back({r, y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rational points where f and both partials vanish, sorted.
inline std::vector<Point2> singular_points(const Polynomial& f) {
  if (f.ring()->size() != 2) throw DomainError("singular_points expects a plane curve");
  if (!f.ring()->field().is_rational()) throw DomainError("plane curves are handled over Q only");
  if (f.is_zero() || f.is_constant()) throw DomainError("singular_points needs a nonconstant polynomial");
  return common_rational_zeros(jacobian_generators(f));
}

inline std::vector<Point2> singular_points(const PlaneCurve& curve) { return singular_points(curve.f); }

/// Local intersection number of V(F) and V(G) at the origin (Fulton's
/// algorithm). Throws when the curves share a component through the origin.
inline std::uint64_t intersection_at_origin(Polynomial F, Polynomial G) {
  const auto& ring = F.ring();
  const std::vector<Polynomial> on_axis{Polynomial::variable(ring, 0), Polynomial::zero(ring)};
  const Exponent y_exp{0, 1};
  std::uint64_t total = 0;
  for (;;) {
    if (F.constant_term() != 0 || G.constant_term() != 0) return total;
    Polynomial f0 = substitute(F, on_axis), g0 = substitute(G, on_axis);
    long r = f0.is_zero() ? -1 : static_cast<long>(f0.degree_in(0));
    long s = g0.is_zero() ? -1 : static_cast<long>(g0.degree_in(0));
    if (r > s) {
      std::swap(F, G);
      std::swap(f0, g0);
      std::swap(r, s);
    }
    if (r < 0) {
      if (s < 0) throw DomainError("curves share a component through the point");
      std::uint32_t ord = s;
      for (const auto& [e, c] : g0.terms()) ord = std::min(ord, e[0]);
      total += ord;
      F = F.divided_by_monomial(y_exp);
      continue;
    }
    Rational lf = f0.coefficient({static_cast<std::uint32_t>(r), 0});
    Rational lg = g0.coefficient({static_cast<std::uint32_t>(s), 0});
    G = G.scaled(lf) - F.shifted({static_cast<std::uint32_t>(s - r), 0}).scaled(lg);
  }
}

inline std::uint64_t intersection_number(const Polynomial& F, const Polynomial& G, const Point2& q) {
  return intersection_at_origin(detail::translated(F, q), detail::translated(G, q));
}

/// delta invariant of V(f) at q: the sum of m(m-1)/2 over q and all
/// singular points infinitely near to it.
inline std::uint64_t delta_at(const Polynomial& f, const Point2& q) {
  const ExtendedNat m = order_at_point(f, q);
  if (m.is_infinite()) throw DomainError("delta of the zero polynomial");
  if (m.value() <= 1) return 0;
  std::uint64_t delta = m.value() * (m.value() - 1) / 2;
  auto charts = blow_up(Chart::root(f.ring(), {f}), Center{{0, 1}, {q[0], q[1]}});
  // chart 0 sees the exceptional line minus one point; chart 1 sees that point at its origin
  const Polynomial& g0 = charts[0].ideal[0];
  auto gens = jacobian_generators(g0);
  gens.push_back(Polynomial::variable(g0.ring(), 0));
  for (const auto& p : common_rational_zeros(gens)) delta += delta_at(g0, p);
  const Polynomial& g1 = charts[1].ideal[0];
  const Point2 origin{Rational(0), Rational(0)};
  if (g1.constant_term() == 0) delta += delta_at(g1, origin);
  return delta;
}

/// A point where the curve meets the exceptional divisors badly: the sum of
/// local intersection numbers with all divisors through it is at least 2.
struct CrossingDefect {
  Point2 point;
  std::uint64_t intersection = 0;  // sum over divisors through the point
  std::uint32_t divisors = 0;      // number of divisors through the point

  std::uint64_t weight() const { return 2 * intersection - divisors - 1; }
};

/// Smooth points of V(f) where V(f) together with the divisors fails to be
/// simple normal crossings. Sorted by point.
inline std::vector<CrossingDefect> crossing_defects(const Polynomial& f, const std::vector<ExceptionalDivisor>& divisors) {
  std::set<Point2> candidates;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    const Polynomial& e = divisors[i].equation;
    Polynomial det = f.derivative(0) * e.derivative(1) - f.derivative(1) * e.derivative(0);
    for (const auto& p : common_rational_zeros({f, e, det})) candidates.insert(p);
    for (std::size_t j = i + 1; j < divisors.size(); ++j)
      for (const auto& p : common_rational_zeros({f, e, divisors[j].equation})) candidates.insert(p);
  }
  std::vector<CrossingDefect> out;
  for (const auto& q : candidates) {
    if (order_at_point(f, q).value() > 1) continue;
    CrossingDefect d{q};
    for (const auto& div : divisors) {
      if (div.equation.evaluate(q) != 0) continue;
      d.divisors += 1;
      d.intersection += intersection_number(f, div.equation, q);
    }
    if (d.intersection >= 2) out.push_back(d);
  }
  return out;
}

struct CurveOptions {
  std::size_t max_steps = 10000;
  /// Also separate the strict transform from the exceptional divisors.
  bool embedded = false;
  TransformKind transform = TransformKind::strict;
};

struct CurveChartState {
  std::vector<Point2> singular;
  std::vector<CrossingDefect> defects;
  ResolutionInvariant invariant;

  std::optional<Point2> next_center() const {
    if (!singular.empty()) return singular.front();
    if (!defects.empty()) return defects.front().point;
    return std::nullopt;
  }
};

/// Invariant of a curve chart: pending is 1 until the chart is done; then
/// (total delta, #singular points) and, in embedded mode, (total crossing
/// weight, #defects).
inline CurveChartState curve_chart_state(const Chart& chart, bool embedded) {
  CurveChartState st;
  const Polynomial& g = chart.ideal.front();
  if (g.is_constant()) {
    st.invariant = ResolutionInvariant{};
    return st;
  }
  st.singular = singular_points(g);
  std::uint64_t delta = 0;
  for (const auto& p : st.singular) delta += delta_at(g, p);
  st.invariant.levels.push_back({Rational(delta), static_cast<std::uint32_t>(st.singular.size())});
  if (embedded) {
    st.defects = crossing_defects(g, chart.exceptional);
    std::uint64_t weight = 0;
    for (const auto& d : st.defects) weight += d.weight();
    st.invariant.levels.push_back({Rational(weight), static_cast<std::uint32_t>(st.defects.size())});
  }
  st.invariant.pending = st.next_center() ? 1 : 0;
  return st;
}

/// Blows up singular points (and, when embedded, bad crossings) one at a
/// time, translating each to the origin first, until every chart is done.
inline ChartTree resolve_plane_curve(const PlaneCurve& curve, const CurveOptions& options = {}) {
  if (!curve.f.ring()->field().is_rational()) throw DomainError("plane curves are handled over Q only");
  if (curve.f.is_constant()) throw DomainError("a constant does not define a curve");
  ChartTree tree(TreeKind::curve, Chart::root(curve.f.ring(), {curve.f}));
  std::size_t steps = 0;
  std::map<std::size_t, CurveChartState> known;
  for (std::size_t id = 0; id < tree.size(); ++id) {
    auto it = known.find(id);
    const CurveChartState st = it != known.end() ? std::move(it->second) : curve_chart_state(tree.node(id), options.embedded);
    if (it != known.end()) known.erase(it);
    tree.node(id).invariant = st.invariant;
    const auto center = st.next_center();
    if (!center) {
      tree.node(id).final = true;
      if (tree.node(id).ideal.front().is_constant()) tree.node(id).empty_variety = true;
      continue;
    }
    if (steps >= options.max_steps) throw BudgetExceeded(options.max_steps, tree);
    ++steps;
    BlowupOptions bo;
    bo.transform = options.transform;
    bo.birth = id;
    if (options.transform == TransformKind::weak)
      bo.weak_power = static_cast<std::uint32_t>(order_at_point(tree.node(id).ideal.front(), *center).value());
    auto children = blow_up(tree.node(id), Center{{0, 1}, {(*center)[0], (*center)[1]}}, bo);
    for (auto& child : children) {
      CurveChartState cs = curve_chart_state(child, options.embedded);
      if (!(cs.invariant < st.invariant))
        throw InvariantViolation("curve invariant did not drop: " + st.invariant.to_string() + " -> " +
                                 cs.invariant.to_string());
      child.invariant = cs.invariant;
      known.emplace(tree.add_child(id, std::move(child)), std::move(cs));
    }
  }
  return tree;
}

}  // namespace resing
