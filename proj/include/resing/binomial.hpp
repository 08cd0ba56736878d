#pragma once

// Combinatorial resolution of binomial ideals.
//
// Every generator is x^m * (c1 x^a + c2 x^b) with disjoint supports of a and b
// after its monomial content x^m is removed. A generator is done once a or b
// is zero (a monomial times a unit or a hyperbolic binomial 1 - l x^d). For a
// pending generator let x^a be its term of least degree; its order is |a| and
// the next level sees the other term with order |b|/|a|, the normalized order
// of the coefficient ideal on the stratum V(supp a). The center is
// V(supp a + T) for a smallest T in supp b with |b|_T >= |a|: the largest
// component of the maximal-order locus.
//
// In the chart of a variable of supp a the order drops below |a|; in the chart
// of a variable of T the least term keeps degree |a| while |b| shrinks. Hence
// the invariant below decreases strictly along every edge.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "resing/blowup.hpp"
#include "resing/tree.hpp"

namespace resing {

struct BinomialTerm {
  Exponent exponent;
  Rational coefficient;

  friend bool operator==(const BinomialTerm&, const BinomialTerm&) = default;
};

/// A polynomial with at most two terms, kept in canonical term order.
class Binomial {
 public:
  Binomial() = default;

  static Binomial from_polynomial(const Polynomial& f) {
    if (f.term_count() > 2)
      throw DomainError("generator '" + f.to_string() + "' has " + std::to_string(f.term_count()) +
                        " terms; binomial input allows at most 2");
    Binomial b;
    for (const auto& [e, c] : f.terms()) b.terms_.push_back({e, c});
    return b;
  }

  Polynomial to_polynomial(const RingPtr& ring) const {
    Polynomial p(ring);
    for (const auto& t : terms_) p.add_term(t.exponent, t.coefficient);
    return p;
  }

  const std::vector<BinomialTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  /// The generator with its monomial content divided out.
  Binomial without_content() const {
    if (terms_.empty()) return *this;
    Exponent m = terms_.front().exponent;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exponent[i]);
    Binomial r = *this;
    for (auto& t : r.terms_)
      for (std::size_t i = 0; i < m.size(); ++i) t.exponent[i] -= m[i];
    return r;
  }

  /// After content removal: a constant, or a binomial with a constant term.
  bool is_locally_monomial() const {
    if (terms_.size() <= 1) return true;
    auto r = without_content();
    return total_degree(r.terms_[0].exponent) == 0 || total_degree(r.terms_[1].exponent) == 0;
  }

  friend bool operator==(const Binomial&, const Binomial&) = default;

 private:
  std::vector<BinomialTerm> terms_;
};

/// Per-generator data of a pending (not yet locally monomial) generator.
struct PendingGenerator {
  std::size_t generator;  // index into the chart ideal
  Exponent least;         // term of least degree, content removed
  Exponent other;
  std::uint64_t order;    // |least|
  Rational next_order;    // |other| / |least|
};

struct InductionState {
  std::vector<PendingGenerator> residual;
  std::size_t active = 0;  // index into residual
  /// Variables of the least term of the active generator, largest exponent first.
  std::vector<std::size_t> chain;
  ResolutionInvariant invariant;
};

/// True iff every generator is a monomial times a unit or a hyperbolic binomial.
inline bool is_locally_monomial(const Chart& chart) {
  for (const auto& g : chart.ideal)
    if (!Binomial::from_polynomial(g).is_locally_monomial()) return false;
  return true;
}

/// Builds the induction state of a chart. `order_at_birth` maps the id of a
/// blown-up chart to the top order its invariant had then; divisors born at a
/// strictly higher order are counted in the first level.
inline InductionState make_induction_state(const Chart& chart,
                                           const std::map<std::size_t, Rational>& order_at_birth = {}) {
  InductionState state;
  for (std::size_t gi = 0; gi < chart.ideal.size(); ++gi) {
    auto b = Binomial::from_polynomial(chart.ideal[gi]);
    if (b.is_locally_monomial()) continue;
    auto r = b.without_content();
    const auto& t0 = r.terms()[0].exponent;
    const auto& t1 = r.terms()[1].exponent;
    // canonical order puts the higher-degree term first; on equal degree the
    // first (leading) term plays the least term
    bool first_is_least = total_degree(t0) <= total_degree(t1);
    PendingGenerator p{gi, first_is_least ? t0 : t1, first_is_least ? t1 : t0, 0, 0};
    p.order = total_degree(p.least);
    p.next_order = Rational(total_degree(p.other)) / Rational(p.order);
    state.residual.push_back(std::move(p));
  }
  state.invariant.pending = static_cast<std::uint32_t>(state.residual.size());
  if (state.residual.empty()) return state;

  for (std::size_t i = 1; i < state.residual.size(); ++i) {
    const auto& cur = state.residual[i];
    const auto& best = state.residual[state.active];
    if (cur.order < best.order || (cur.order == best.order && cur.next_order < best.next_order)) state.active = i;
  }
  const auto& act = state.residual[state.active];

  for (std::size_t v = 0; v < act.least.size(); ++v)
    if (act.least[v] > 0) state.chain.push_back(v);
  std::stable_sort(state.chain.begin(), state.chain.end(),
                   [&](auto x, auto y) { return act.least[x] > act.least[y]; });

  const Rational order(act.order);
  std::uint32_t old_divisors = 0, on_stratum = 0;
  for (const auto& d : chart.exceptional) {
    auto it = order_at_birth.find(d.birth);
    if (it != order_at_birth.end() && it->second > order) ++old_divisors;
    if (!d.variable.empty()) {
      auto idx = chart.ambient->index_of(d.variable);
      if (idx && act.least[*idx] > 0) ++on_stratum;
    }
  }
  state.invariant.levels = {{order, old_divisors}, {act.next_order, on_stratum}};
  return state;
}

/// Least order of a pending generator at the chart origin.
inline Rational binomial_order(const InductionState& state) {
  if (state.residual.empty()) throw DomainError("binomial_order of a locally monomial chart");
  std::uint64_t m = state.residual.front().order;
  for (const auto& p : state.residual) m = std::min(m, p.order);
  return Rational(m);
}

/// Largest component of the maximal-order locus of the active generator:
/// V(supp least + T) with T a smallest subset of supp other reaching the order;
/// among equals the lexicographically first sorted variable list.
inline Center select_center(const InductionState& state) {
  if (state.residual.empty()) throw DomainError("chart is locally monomial; there is no center");
  const auto& act = state.residual[state.active];
  std::vector<std::size_t> least_support, other_support;
  for (std::size_t v = 0; v < act.least.size(); ++v) {
    if (act.least[v] > 0) least_support.push_back(v);
    if (act.other[v] > 0) other_support.push_back(v);
  }
  const std::size_t m = other_support.size();
  for (std::size_t size = 1; size <= m; ++size) {
    std::optional<std::vector<std::size_t>> best;
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::uint64_t sum = 0;
      std::vector<std::size_t> vars = least_support;
      for (std::size_t k = 0; k < m; ++k)
        if (pick[k]) {
          sum += act.other[other_support[k]];
          vars.push_back(other_support[k]);
        }
      if (sum < act.order) continue;
      std::sort(vars.begin(), vars.end());
      if (!best || vars < *best) best = vars;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (best) return Center{*best, {}};
  }
  throw InvariantViolation("no center reaches the order of the least term");
}

struct BinomialOptions {
  std::size_t max_steps = 10000;
  TransformKind transform = TransformKind::strict;
};

namespace detail {

/// Re-reads every polynomial of the tree over `field`.
inline ChartTree materialize(const ChartTree& tree, FieldSpec field) {
  if (tree.root().ambient->field() == field) return tree;
  auto convert = [&](const Chart& c) {
    RingPtr ring = make_ring(c.ambient->names(), field);
    Chart out = c;
    out.ambient = ring;
    for (auto& g : out.ideal) g = g.rebased(ring);
    for (auto& g : out.images) g = g.rebased(ring);
    for (auto& d : out.exceptional) d.equation = d.equation.rebased(ring);
    return out;
  };
  ChartTree out(tree.kind(), convert(tree.root()));
  for (std::size_t i = 1; i < tree.size(); ++i) out.add_child(*tree.node(i).parent, convert(tree.node(i)));
  return out;
}

}  // namespace detail

/// Resolves the binomial ideal generated by `ideal` until every final chart
/// is locally monomial. The combinatorics run over the input ring's field;
/// when `field` differs (characteristic 0 input, prime target) the finished
/// tree is re-read over `field`, so the skeleton does not depend on it.
inline ChartTree resolve_binomial(const std::vector<Polynomial>& ideal, FieldSpec field,
                                  const BinomialOptions& options = {}) {
  if (ideal.empty()) throw DomainError("empty ideal");
  const RingPtr ring = ideal.front().ring();
  for (const auto& g : ideal) {
    if (!same_ring(g.ring(), ring)) throw DomainError("generators live in different rings");
    Binomial::from_polynomial(g);
  }
  if (!(ring->field() == field) && !ring->field().is_rational())
    throw DomainError("a prime-field ideal cannot be resolved over another field");
  if (!(ring->field() == field))
    for (const auto& g : ideal)
      for (const auto& [e, c] : g.terms()) {
        if (field.normalize(c) == 0)
          throw DomainError("coefficient " + to_string(c) + " vanishes in characteristic " +
                            std::to_string(field.characteristic()));
      }

  ChartTree tree(TreeKind::binomial, Chart::root(ring, ideal));
  {
    auto& root = tree.node(0);
    bool unit = std::any_of(ideal.begin(), ideal.end(), [](const Polynomial& g) { return g.is_constant() && !g.is_zero(); });
    if (unit) {
      root.empty_variety = true;
      root.final = true;
      root.invariant = ResolutionInvariant{};
      return detail::materialize(tree, field);
    }
  }

  std::map<std::size_t, Rational> order_at_birth;
  tree.node(0).invariant = make_induction_state(tree.root()).invariant;
  std::size_t blowups = 0;
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto state = make_induction_state(tree.node(id), order_at_birth);
    if (state.invariant.terminal()) {
      tree.node(id).final = true;
      continue;
    }
    if (blowups >= options.max_steps) throw BudgetExceeded(options.max_steps, detail::materialize(tree, field));
    const Center center = select_center(state);
    order_at_birth[id] = state.invariant.levels.front().order;

    BlowupOptions bo;
    bo.transform = options.transform;
    bo.birth = id;
    if (options.transform == TransformKind::weak)
      bo.weak_power = static_cast<std::uint32_t>(numerator(state.invariant.levels.front().order));
    auto children = blow_up(tree.node(id), center, bo);
    ++blowups;
    const ResolutionInvariant parent_invariant = state.invariant;
    for (auto& child : children) {
      child.invariant = make_induction_state(child, order_at_birth).invariant;
      if (!(*child.invariant < parent_invariant))
        throw InvariantViolation("resolution invariant did not drop: " + parent_invariant.to_string() + " -> " +
                                 child.invariant->to_string());
      tree.add_child(id, std::move(child));
    }
  }
  return detail::materialize(tree, field);
}

inline ChartTree resolve_binomial(const std::vector<Binomial>& ideal, const RingPtr& ring, FieldSpec field,
                                  const BinomialOptions& options = {}) {
  std::vector<Polynomial> polys;
  for (const auto& b : ideal) polys.push_back(b.to_polynomial(ring));
  return resolve_binomial(polys, field, options);
}

/// Tree shape with centers and edge labels, for comparing runs.
struct TreeSkeleton {
  std::vector<std::optional<std::size_t>> parents;
  std::vector<std::optional<std::vector<std::size_t>>> centers;
  std::vector<std::optional<std::size_t>> center_dims;
  std::vector<bool> finals;

  friend bool operator==(const TreeSkeleton&, const TreeSkeleton&) = default;
};

inline TreeSkeleton skeleton(const ChartTree& tree) {
  TreeSkeleton s;
  for (const auto& c : tree.nodes()) {
    s.parents.push_back(c.parent);
    s.centers.push_back(c.center ? std::optional(c.center->variables) : std::nullopt);
    s.center_dims.push_back(c.center_dim);
    s.finals.push_back(c.final);
  }
  return s;
}

}  // namespace resing
