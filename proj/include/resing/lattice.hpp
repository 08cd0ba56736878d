#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "resing/errors.hpp"
#include "resing/field.hpp"

namespace resing {

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  LatticeVector(std::initializer_list<long long> entries) {
    for (auto v : entries) entries_.emplace_back(v);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Integer>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return v == 0; });
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& v : entries_) g = boost::multiprecision::gcd(g, v);
    return boost::multiprecision::abs(g);
  }
  bool is_primitive() const { return content() == 1; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) out += (i ? "," : "") + entries_[i].str();
    return out;
  }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Integer> entries_;
};

using IntMatrix = std::vector<std::vector<Integer>>;

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
inline void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Solves x * rows = v over Q; nullopt when v is outside the row span.
inline std::optional<std::vector<Rational>> solve_row_combination(const std::vector<LatticeVector>& rows,
                                                                  const LatticeVector& v) {
  const std::size_t k = rows.size(), n = v.size();
  // Augmented system: n equations, k unknowns.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
  for (std::size_t eq = 0; eq < n; ++eq) {
    for (std::size_t j = 0; j < k; ++j) a[eq][j] = Rational(rows[j][eq]);
    a[eq][k] = Rational(v[eq]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (a[i][k] != 0) return std::nullopt;
  if (pivot_col.size() != k) throw DomainError("rays are linearly dependent");
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][k] / a[i][pivot_col[i]];
  return x;
}

}  // namespace detail

struct HermiteResult {
  IntMatrix normal_form;
  IntMatrix transform;  // unimodular U with U * A = H
};

/// Row-style Hermite normal form: H upper triangular (echelon), positive
/// pivots, entries above a pivot reduced into [0, pivot), zero rows last.
inline HermiteResult hermite_normal_form(const std::vector<LatticeVector>& rows) {
  if (rows.empty()) throw DomainError("hermite_normal_form needs at least one row");
  const std::size_t m = rows.size(), n = rows.front().size();
  IntMatrix h(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw DomainError("rows have different lengths");
    h[i] = rows[i].entries();
  }
  IntMatrix u = detail::identity_matrix(m);

  auto combine = [&](IntMatrix& mat, std::size_t r, std::size_t i, const Integer& s, const Integer& t,
                     const Integer& x, const Integer& y) {
    // row_r <- s*row_r + t*row_i ; row_i <- x*row_r + y*row_i
    for (std::size_t c = 0; c < mat[r].size(); ++c) {
      Integer a = mat[r][c], b = mat[i][c];
      mat[r][c] = s * a + t * b;
      mat[i][c] = x * a + y * b;
    }
  };

  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h[i][col] == 0) continue;
      Integer a = h[r][col], b = h[i][col], g, s, t;
      detail::extended_gcd(a, b, g, s, t);
      Integer x = -b / g, y = a / g;
      combine(h, r, i, s, t, x, y);
      combine(u, r, i, s, t, x, y);
    }
    if (h[r][col] == 0) continue;
    if (h[r][col] < 0) {
      for (auto& v : h[r]) v = -v;
      for (auto& v : u[r]) v = -v;
    }
    const Integer pivot = h[r][col];
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = detail::floor_div(h[i][col], pivot);
      if (q == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h[i][c] -= q * h[r][c];
      for (std::size_t c = 0; c < m; ++c) u[i][c] -= q * u[r][c];
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Simplicial cone spanned by primitive, linearly independent rays.
class Cone {
 public:
  explicit Cone(std::vector<LatticeVector> rays) : rays_(std::move(rays)) {
    if (rays_.empty()) throw DomainError("a cone needs at least one ray");
    const std::size_t n = rays_.front().size();
    if (n == 0) throw DomainError("rays must have positive length");
    for (const auto& r : rays_) {
      if (r.size() != n) throw DomainError("rays of a cone live in different lattices");
      if (!r.is_primitive()) throw DomainError("ray (" + r.to_string() + ") is not primitive");
    }
    if (rays_.size() > n) throw DomainError("cone is not simplicial: more rays than the lattice rank");
    compute_structure();
  }

  const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
  std::size_t dimension() const noexcept { return rays_.size(); }
  std::size_t ambient_dimension() const noexcept { return rays_.front().size(); }
  const Integer& multiplicity() const noexcept { return multiplicity_; }
  bool is_smooth() const { return multiplicity_ == 1; }

  /// Coordinates of v in the ray basis, or nullopt when v is outside the span.
  std::optional<std::vector<Rational>> coordinates(const LatticeVector& v) const {
    if (v.size() != ambient_dimension()) throw DomainError("vector has the wrong dimension");
    return detail::solve_row_combination(rays_, v);
  }

  bool contains(const LatticeVector& v) const {
    auto c = coordinates(v);
    return c && std::all_of(c->begin(), c->end(), [](const Rational& x) { return x >= 0; });
  }

  /// Rays sorted, for order-independent comparison.
  std::vector<LatticeVector> canonical() const {
    auto r = rays_;
    std::sort(r.begin(), r.end());
    return r;
  }

  /// Lattice points sum(l_i r_i) with 0 <= l_i < 1, paired with their coordinates.
  std::vector<std::pair<LatticeVector, std::vector<Rational>>> parallelepiped_points() const {
    const std::size_t k = rays_.size();
    // Group generated by the rows of M^{-1} modulo Z^k, where rays = M * basis.
    std::vector<std::vector<Rational>> gens(k, std::vector<Rational>(k));
    {
      std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = Rational(m_[i][j]);
        a[i][k + i] = 1;
      }
      for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        Rational piv = a[c][c];
        for (auto& x : a[c]) x /= piv;
        for (std::size_t i = 0; i < k; ++i) {
          if (i == c || a[i][c] == 0) continue;
          Rational f = a[i][c];
          for (std::size_t j = 0; j < 2 * k; ++j) a[i][j] -= f * a[c][j];
        }
      }
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gens[i][j] = a[i][k + j];
    }
    auto frac = [](const Rational& q) {
      Integer fl = detail::floor_div(numerator(q), denominator(q));
      return q - Rational(fl);
    };
    std::set<std::vector<Rational>> seen;
    std::vector<std::vector<Rational>> queue{std::vector<Rational>(k, Rational(0))};
    seen.insert(queue.front());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& g : gens) {
        std::vector<Rational> next(k);
        for (std::size_t j = 0; j < k; ++j) next[j] = frac(queue[head][j] + g[j]);
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    std::vector<std::pair<LatticeVector, std::vector<Rational>>> out;
    for (const auto& lambda : queue) {
      std::vector<Integer> v(ambient_dimension(), 0);
      for (std::size_t e = 0; e < v.size(); ++e) {
        Rational s = 0;
        for (std::size_t i = 0; i < k; ++i) s += lambda[i] * Rational(rays_[i][e]);
        if (denominator(s) != 1) throw InvariantViolation("parallelepiped point is not integral");
        v[e] = numerator(s);
      }
      out.emplace_back(LatticeVector(std::move(v)), lambda);
    }
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rays_.size(); ++i) out += (i ? "; " : "") + rays_[i].to_string();
    return out;
  }

  friend bool operator==(const Cone& a, const Cone& b) { return a.canonical() == b.canonical(); }

 private:
  void compute_structure() {
    const std::size_t k = rays_.size(), n = ambient_dimension();
    // Rays as columns: U * R^T = H, and R = H_top^T * (first k rows of U^{-T}).
    std::vector<LatticeVector> columns;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<Integer> row(k);
      for (std::size_t i = 0; i < k; ++i) row[i] = rays_[i][e];
      columns.emplace_back(std::move(row));
    }
    auto hnf = hermite_normal_form(columns);
    multiplicity_ = 1;
    m_.assign(k, std::vector<Integer>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      if (hnf.normal_form[i][i] == 0) throw DomainError("rays are linearly dependent");
      multiplicity_ *= hnf.normal_form[i][i];
      for (std::size_t j = 0; j < k; ++j) m_[j][i] = hnf.normal_form[i][j];
    }
  }

  std::vector<LatticeVector> rays_;
  Integer multiplicity_ = 1;
  IntMatrix m_;
};

/// Index of the ray lattice in its saturation; 1 exactly for smooth cones.
inline Integer cone_multiplicity(const Cone& c) { return c.multiplicity(); }

/// Lattice point of the half-open fundamental parallelepiped minimizing the
/// sum of its ray coordinates, ties broken lexicographically on entries.
inline LatticeVector pick_subdivision_ray(const Cone& c) {
  if (c.is_smooth()) throw DomainError("cone (" + c.to_string() + ") is smooth; nothing to subdivide");
  std::optional<std::pair<Rational, LatticeVector>> best;
  for (auto& [v, lambda] : c.parallelepiped_points()) {
    if (v.is_zero()) continue;
    Rational s = std::accumulate(lambda.begin(), lambda.end(), Rational(0));
    if (!best || s < best->first || (s == best->first && v < best->second)) best.emplace(s, v);
  }
  return best->second;
}

class Fan {
 public:
  Fan() = default;
  explicit Fan(std::vector<Cone> cones) : cones_(std::move(cones)) {
    for (const auto& c : cones_)
      if (c.ambient_dimension() != cones_.front().ambient_dimension())
        throw DomainError("cones of a fan live in different lattices");
  }

  const std::vector<Cone>& cones() const noexcept { return cones_; }
  std::size_t size() const noexcept { return cones_.size(); }
  bool empty() const noexcept { return cones_.empty(); }
  std::size_t ambient_dimension() const { return cones_.empty() ? 0 : cones_.front().ambient_dimension(); }

  bool is_smooth() const {
    return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.is_smooth(); });
  }

  Integer max_multiplicity() const {
    Integer m = 0;
    for (const auto& c : cones_) m = std::max(m, c.multiplicity());
    return m;
  }

  std::vector<Integer> multiplicities() const {
    std::vector<Integer> out;
    for (const auto& c : cones_) out.push_back(c.multiplicity());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const LatticeVector& v) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& c) { return c.contains(v); });
  }

  /// Sorted canonical cones, for order-independent comparison.
  std::vector<std::vector<LatticeVector>> canonical() const {
    std::vector<std::vector<LatticeVector>> out;
    for (const auto& c : cones_) out.push_back(c.canonical());
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Fan& a, const Fan& b) { return a.canonical() == b.canonical(); }

 private:
  std::vector<Cone> cones_;
};

/// Star subdivision at `ray`: every cone containing it is replaced by the
/// cones obtained by swapping the ray in for each generator with a positive
/// coordinate. Cones where `ray` is already a generator are left alone.
inline Fan star_subdivide(const Fan& fan, const LatticeVector& ray) {
  if (fan.empty()) throw DomainError("cannot subdivide an empty fan");
  if (ray.size() != fan.ambient_dimension()) throw DomainError("ray has the wrong dimension");
  if (!ray.is_primitive()) throw DomainError("ray (" + ray.to_string() + ") is not primitive");
  bool inside = false;
  std::vector<Cone> out;
  for (const auto& cone : fan.cones()) {
    auto coords = cone.coordinates(ray);
    bool contains = coords && std::all_of(coords->begin(), coords->end(), [](const Rational& x) { return x >= 0; });
    if (!contains) {
      out.push_back(cone);
      continue;
    }
    inside = true;
    std::size_t positive = std::count_if(coords->begin(), coords->end(), [](const Rational& x) { return x > 0; });
    if (positive == 1) {  // the ray is one of the generators
      out.push_back(cone);
      continue;
    }
    for (std::size_t i = 0; i < coords->size(); ++i) {
      if ((*coords)[i] == 0) continue;
      auto rays = cone.rays();
      rays[i] = ray;
      out.emplace_back(std::move(rays));
    }
  }
  if (!inside) throw DomainError("ray (" + ray.to_string() + ") lies outside the support of the fan");
  return Fan(std::move(out));
}

/// Fan text: one cone per line, rays separated by ';', entries by ','.
/// Blank lines and lines starting with '#' are skipped.
inline Fan parse_fan(std::string_view text) {
  std::vector<Cone> cones;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(offset, end - offset));
    const std::size_t line_start = offset;
    offset = end + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<LatticeVector> rays;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t semi = line.find(';', pos);
      if (semi == std::string::npos) semi = line.size();
      std::string ray_text = line.substr(pos, semi - pos);
      std::vector<Integer> entries;
      std::size_t q = 0;
      while (q <= ray_text.size()) {
        std::size_t comma = ray_text.find(',', q);
        if (comma == std::string::npos) comma = ray_text.size();
        std::string tok = ray_text.substr(q, comma - q);
        auto b = tok.find_first_not_of(" \t\r"), e = tok.find_last_not_of(" \t\r");
        if (b == std::string::npos) throw ParseError("empty ray entry", line_start + pos + q);
        tok = tok.substr(b, e - b + 1);
        std::size_t digits = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (digits == tok.size() ||
            !std::all_of(tok.begin() + digits, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw ParseError("malformed integer '" + tok + "'", line_start + pos + q);
        entries.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
        q = comma + 1;
      }
      rays.emplace_back(std::move(entries));
      pos = semi + 1;
    }
    try {
      cones.emplace_back(std::move(rays));
    } catch (const DomainError& err) {
      throw ParseError(err.what(), line_start);
    }
  }
  if (cones.empty()) throw ParseError("no cones in fan text", 0);
  try {
    return Fan(std::move(cones));
  } catch (const DomainError& err) {
    throw ParseError(err.what(), 0);
  }
}

inline std::string format_fan(const Fan& fan) {
  std::string out;
  for (const auto& c : fan.cones()) out += c.to_string() + "\n";
  return out;
}

}  // namespace resing
