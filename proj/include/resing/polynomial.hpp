#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resing/errors.hpp"
#include "resing/field.hpp"

namespace resing {

/// Ordered variable names over a ground field.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> variables, FieldSpec field)
      : vars_(std::move(variables)), field_(field) {
    if (vars_.empty()) throw DomainError("a ring needs at least one variable");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw DomainError("duplicate variable '" + vars_[i] + "'");
  }

  std::size_t size() const noexcept { return vars_.size(); }
  const std::string& name(std::size_t i) const { return vars_.at(i); }
  const std::vector<std::string>& names() const noexcept { return vars_; }
  const FieldSpec& field() const noexcept { return field_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
  }

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  std::vector<std::string> vars_;
  FieldSpec field_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> variables, FieldSpec field = FieldSpec{}) {
  return std::make_shared<const PolyRing>(std::move(variables), field);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

using Exponent = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponent& e) {
  std::uint64_t d = 0;
  for (auto v : e) d += v;
  return d;
}

/// Degree-then-lexicographic, highest first. Fixes the printed term order.
struct DegLexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return b < a;
  }
};

/// Natural number or infinity; infinity is the order of the zero polynomial.
class ExtendedNat {
 public:
  constexpr ExtendedNat() = default;
  constexpr ExtendedNat(std::uint64_t v) : value_(v) {}  // NOLINT implicit
  static constexpr ExtendedNat infinity() {
    ExtendedNat n;
    n.infinite_ = true;
    return n;
  }
  constexpr bool is_infinite() const { return infinite_; }
  constexpr std::uint64_t value() const { return value_; }

  friend constexpr bool operator==(const ExtendedNat& a, const ExtendedNat& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedNat& a, const ExtendedNat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr ExtendedNat operator+(const ExtendedNat& a, const ExtendedNat& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedNat(a.value_ + b.value_);
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtendedNat& n) {
    return n.infinite_ ? os << "inf" : os << n.value_;
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// Sparse polynomial with exact coefficients. Immutable in spirit: every
/// operation returns a new value; no zero coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, DegLexDescending>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    p.add_term(Exponent(p.ring_->size(), 0), c);
    return p;
  }

  static Polynomial variable(RingPtr ring, std::size_t i) {
    Polynomial p(std::move(ring));
    if (i >= p.ring_->size()) throw DomainError("variable index out of range");
    Exponent e(p.ring_->size(), 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
  }

  static Polynomial monomial(RingPtr ring, Exponent e, const Rational& c = 1) {
    Polynomial p(std::move(ring));
    if (e.size() != p.ring_->size()) throw DomainError("exponent length does not match ring");
    p.add_term(e, c);
    return p;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && resing::total_degree(terms_.begin()->first) == 0);
  }

  /// Coefficient of the monomial x^e (zero when absent).
  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponent(ring_->size(), 0)); }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, resing::total_degree(e));
    return d;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
  }

  /// Minimum total degree of a term; infinity for the zero polynomial.
  ExtendedNat order_at_origin() const {
    if (terms_.empty()) return ExtendedNat::infinity();
    // The last term in deg-lex-descending order has the least degree.
    return ExtendedNat(resing::total_degree(terms_.rbegin()->first));
  }

  /// Adds c*x^e in place, normalizing in the ring's field.
  void add_term(const Exponent& e, const Rational& c) {
    const auto& field = ring_->field();
    Rational v = field.normalize(c);
    if (v == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, v);
    if (!inserted) {
      it->second = field.add(it->second, v);
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, ring_->field().neg(c));
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.ring_);
    const auto& field = a.ring_->field();
    Exponent e(a.ring_->size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, field.mul(ca, cb));
      }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& s) const {
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  Polynomial pow(std::uint64_t n) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return result;
  }

  /// Multiplies by the monomial x^e.
  Polynomial shifted(const Exponent& e) const {
    Polynomial r(ring_);
    for (const auto& [te, c] : terms_) {
      Exponent s = te;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += e[i];
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  /// Exact division by the monomial x^e; throws if some term is not divisible.
  Polynomial divided_by_monomial(const Exponent& e) const {
    Polynomial r(ring_);
    for (const auto& [te, c] : terms_) {
      Exponent s = te;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < e[i]) throw DomainError("polynomial is not divisible by the monomial");
        s[i] -= e[i];
      }
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponent s = e;
      s[var] -= 1;
      r.add_term(s, c * e[var]);
    }
    return r;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != ring_->size()) throw DomainError("point dimension does not match ring");
    const auto& field = ring_->field();
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
      sum += t;
    }
    return field.normalize(sum);
  }

  /// The same terms read in another ring with identical variable count.
  /// Coefficients are renormalized in the target field.
  Polynomial rebased(RingPtr target) const {
    if (target->size() != ring_->size()) throw DomainError("rebase needs equal variable counts");
    Polynomial r(std::move(target));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  void check_ring(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw DomainError("polynomials live in different rings");
  }

  RingPtr ring_;
  TermMap terms_;
};

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += resing::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += resing::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

/// Replaces variable i of f by images[i] and expands. All images must share
/// one target ring whose field matches the source field.
inline Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
  if (images.size() != f.ring()->size())
    throw DomainError("substitution needs " + std::to_string(f.ring()->size()) + " images, got " +
                      std::to_string(images.size()));
  if (images.empty()) throw DomainError("empty substitution");
  const RingPtr& target = images.front().ring();
  for (const auto& g : images)
    if (!same_ring(g.ring(), target)) throw DomainError("substitution images live in different rings");
  if (!(target->field() == f.ring()->field()))
    throw DomainError("substitution changes the ground field");

  // powers[i][k] = images[i]^k, filled lazily
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };

  Polynomial result = Polynomial::zero(target);
  for (const auto& [e, c] : f.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term *= power(i, e[i]);
    result += term;
  }
  return result;
}

/// Identity images x_1, ..., x_n of a ring.
inline std::vector<Polynomial> identity_images(const RingPtr& ring) {
  std::vector<Polynomial> out;
  out.reserve(ring->size());
  for (std::size_t i = 0; i < ring->size(); ++i) out.push_back(Polynomial::variable(ring, i));
  return out;
}

/// Order of f at p: the least total degree after translating p to the origin.
inline ExtendedNat order_at_point(const Polynomial& f, std::span<const Rational> point) {
  const auto& ring = f.ring();
  if (point.size() != ring->size()) throw DomainError("point dimension does not match ring");
  std::vector<Polynomial> shift;
  shift.reserve(ring->size());
  for (std::size_t i = 0; i < ring->size(); ++i)
    shift.push_back(Polynomial::variable(ring, i) + Polynomial::constant(ring, point[i]));
  return substitute(f, shift).order_at_origin();
}

/// f followed by all first partials: V(f) is singular exactly where they all vanish.
inline std::vector<Polynomial> jacobian_generators(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("jacobian of the zero polynomial");
  std::vector<Polynomial> out{f};
  for (std::size_t i = 0; i < f.ring()->size(); ++i) out.push_back(f.derivative(i));
  return out;
}

/// Componentwise minimum of the exponent vectors of f.
inline Exponent monomial_content(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("monomial content of the zero polynomial");
  Exponent m = f.terms().begin()->first;
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

/// Splits f = x^m * g with g free of monomial factors.
inline std::pair<Exponent, Polynomial> factor_out_monomial(const Polynomial& f) {
  Exponent m = monomial_content(f);
  return {m, f.divided_by_monomial(m)};
}

}  // namespace resing
