// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "resing/binomial.hpp"
#include "resing/coefficient_ideal.hpp"
#include "resing/curve.hpp"
#include "resing/export.hpp"
#include "resing/toric.hpp"
#include "support.hpp"

using namespace resing;
using testing_support::P;
using testing_support::ring;
using testing_support::to_oracle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      if (pass) detail << why;
      pass = false;
    }
  }
};

RingPtr x_ring(std::size_t n, std::uint64_t p = 0) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x(" + std::to_string(i) + ")");
  return ring(names, p);
}

struct Corpus {
  std::vector<std::pair<std::string, ChartTree>> trees;
};

Corpus& corpus() {
  static Corpus c;
  return c;
}

// ------------------------------------------------------------------ 1

Outcome whitney() {
  Outcome o;
  const auto start = Clock::now();
  auto r = x_ring(3);
  auto charts = blow_up(Chart::root(r, {P("x(1)^2-x(2)*x(3)^2", r)}), Center{{0, 2}, {}});
  o.require(charts.size() == 2, "expected two charts");
  if (!o.pass) return o;
  const Chart& c = charts[1];
  // the reference listing calls the fresh variable y(1); we call it x(1)'
  auto reference = make_ring({"y(1)", "x(2)", "x(3)"}, FieldSpec{});
  auto as_reference = [&](const Polynomial& f) { return f.rebased(reference); };
  o.require(c.ideal.size() == 1 && as_reference(c.ideal[0]) == P("y(1)^2-x(2)", reference), "strict transform differs");
  o.require(c.exceptional.size() == 1 && as_reference(c.exceptional[0].equation) == P("x(3)", reference),
            "exceptional divisor differs");
  o.require(c.images.size() == 3 && as_reference(c.images[0]) == P("x(3)*y(1)", reference) &&
                as_reference(c.images[1]) == P("x(2)", reference) && as_reference(c.images[2]) == P("x(3)", reference),
            "images differ");
  const auto shown = show_chart(c);
  o.require(shown.find("_[1]=x(1)'^2-x(2)") != std::string::npos, "show_chart lacks the ideal line");
  o.require(shown.find("_[1]=x(1)'*x(3)") != std::string::npos, "show_chart lacks the image line");
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + "s");
  o.detail << "chart x(3): x(1)'^2-x(2), E={x(3)}, images (x(1)'*x(3), x(2), x(3)); " << t << "s";
  return o;
}

// ------------------------------------------------------------------ 2

bool locally_monomial_by_grid(const Chart& c) {
  // every residual factor is nonsingular on a small rational grid
  for (const auto& g : c.ideal) {
    if (g.is_constant()) continue;
    auto residual = factor_out_monomial(g).second;
    if (residual.is_constant()) continue;
    if (!oracle::grid_singular(to_oracle(residual), 2, 1).empty()) return false;
  }
  return true;
}

Outcome binomial_table() {
  Outcome o;
  struct Row {
    const char* text;
    std::size_t n;
    std::size_t reference;
    double budget;
  };
  for (const Row& row : {Row{"x(1)^2-x(2)*x(3)^2", 3, 12, 10}, Row{"x(1)^2-x(2)^2*x(3)^2", 3, 7, 10},
                         Row{"x(1)*x(2)^2*x(3)^3-x(4)^6", 4, 240, 300}}) {
    auto r = x_ring(row.n);
    const auto start = Clock::now();
    ChartTree tree;
    try {
      tree = resolve_binomial({P(row.text, r)}, FieldSpec{});
    } catch (const Error& e) {
      o.require(false, std::string(row.text) + ": " + e.what());
      continue;
    }
    const double t = seconds_since(start);
    const auto finals = tree.finals();
    bool monomial = true;
    for (auto id : finals) {
      monomial = monomial && is_locally_monomial(tree.node(id));
      if (row.n <= 3) monomial = monomial && locally_monomial_by_grid(tree.node(id));
    }
    o.require(monomial, std::string(row.text) + ": a final chart is not locally monomial");
    o.require(finals.size() * 4 >= row.reference && finals.size() <= row.reference * 4,
              std::string(row.text) + ": count " + std::to_string(finals.size()) + " outside factor 4 of " +
                  std::to_string(row.reference));
    o.require(t < row.budget, std::string(row.text) + ": too slow");
    o.detail << row.text << " -> " << finals.size() << " (reference " << row.reference << ", " << t << "s); ";
    corpus().trees.emplace_back(row.text, std::move(tree));
  }
  return o;
}

// ------------------------------------------------------------------ 3

Outcome characteristic_independence() {
  Outcome o;
  auto q = resolve_binomial({P("x(1)^2-x(2)^2*x(3)^2", x_ring(3))}, FieldSpec{});
  auto f2 = resolve_binomial({P("x(1)^2-x(2)^2*x(3)^2", x_ring(3))}, FieldSpec(2));
  o.require(skeleton(q) == skeleton(f2), "skeletons differ");
  o.require(f2.root().ambient->field().characteristic() == 2, "F2 tree is not over F2");
  // node count, centers and edge labels by hand as well
  bool same = q.size() == f2.size();
  for (std::size_t i = 0; same && i < q.size(); ++i) {
    const auto &a = q.node(i), &b = f2.node(i);
    same = a.parent == b.parent && a.center_dim == b.center_dim && a.final == b.final &&
           (a.center ? b.center && a.center->variables == b.center->variables : !b.center);
  }
  o.require(same, "node-by-node comparison failed");
  o.detail << q.size() << " nodes each";
  corpus().trees.emplace_back("x(1)^2-x(2)^2*x(3)^2 over F2", std::move(f2));
  return o;
}

// ------------------------------------------------------------------ 4

Outcome toric_hj() {
  Outcome o;
  const auto start = Clock::now();
  for (long m = 2; m <= 12; ++m) {
    auto res = resolve_fan(Fan({Cone({{1, 0}, {1, m}})}));
    std::set<std::pair<long, long>> inserted;
    for (const auto& s : res.history.steps) inserted.insert({static_cast<long>(s.ray[0]), static_cast<long>(s.ray[1])});
    o.require(res.history.steps.size() == static_cast<std::size_t>(m - 1), "m=" + std::to_string(m) + ": wrong ray count");
    o.require(inserted == oracle::hj_rays({1, 0}, {1, m}), "m=" + std::to_string(m) + ": rays differ from the oracle");
    for (const auto& c : res.fan.cones())
      o.require(oracle::abs_det({{static_cast<long>(c.rays()[0][0]), static_cast<long>(c.rays()[0][1])},
                                 {static_cast<long>(c.rays()[1][0]), static_cast<long>(c.rays()[1][1])}}) == 1,
                "m=" + std::to_string(m) + ": singular output cone");
    // the multiset of multiplicities drops with every subdivision
    for (const auto& s : res.history.steps) {
      auto before = s.multiplicities_before, after = s.multiplicities_after;
      std::sort(before.rbegin(), before.rend());
      std::sort(after.rbegin(), after.rend());
      o.require(after < before, "m=" + std::to_string(m) + ": multiplicities did not drop");
    }
  }
  const double t = seconds_since(start);
  o.require(t < 1.0, "took " + std::to_string(t) + "s");
  o.detail << "m=2..12 match; " << t << "s";
  return o;
}

// ------------------------------------------------------------------ 5

Outcome curve_corpus() {
  Outcome o;
  struct Row {
    const char* name;
    const char* text;
    int expected;
  };
  auto r = ring({"x", "y"});
  for (const Row& row : {Row{"node", "x*y", 1}, Row{"cusp", "x^2-y^3", 1}, Row{"tacnode", "y^2-x^4", 2},
                         Row{"triple point", "x^3-x*y^2", 1}}) {
    const int oracle_count = oracle::origin_blowups(to_oracle(P(row.text, r)));
    o.require(oracle_count == row.expected, std::string(row.name) + ": oracle disagrees with the expected count");
    ChartTree tree;
    try {
      tree = resolve_plane_curve(PlaneCurve{P(row.text, r)});
    } catch (const Error& e) {
      o.require(false, std::string(row.name) + ": " + e.what());
      continue;
    }
    o.require(tree.blowup_count() == static_cast<std::size_t>(oracle_count),
              std::string(row.name) + ": " + std::to_string(tree.blowup_count()) + " blow-ups");
    for (auto id : tree.finals()) {
      const auto& g = tree.node(id).ideal.front();
      if (g.is_constant()) continue;
      o.require(jacobian_generators(g).size() == 3 && singular_points(g).empty() &&
                    oracle::grid_singular(to_oracle(g), 3, 2).empty(),
                std::string(row.name) + ": final chart " + std::to_string(id) + " is singular");
    }
    o.detail << row.name << " " << tree.blowup_count() << "; ";
    corpus().trees.emplace_back(row.text, std::move(tree));
  }
  for (const char* text : {"x^2-y^5", "x^2-y^3", "y^2-x^2*(x-1)^2"}) {
    CurveOptions embedded;
    embedded.embedded = true;
    corpus().trees.emplace_back(std::string(text) + " embedded", resolve_plane_curve(PlaneCurve{P(text, r)}, embedded));
  }
  return o;
}

// ------------------------------------------------------------------ 6

Outcome coefficient_sweep() {
  Outcome o;
  oracle::Rng rng(2024);
  int failures = 0, disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t params = static_cast<std::size_t>(rng.uniform(1, 3));
    const int k = rng.uniform(1, 4);
    auto of = oracle::random_monic(rng, params, k, 6);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < params; ++i) names.push_back("x(" + std::to_string(i + 1) + ")");
    names.push_back("z");
    auto f = testing_support::from_oracle(of, ring(names));
    if (!check_order_equivalence(f, params)) ++failures;
    // brute force both sides
    int kf = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    bool rhs = true;
    for (int i = 1; i <= k; ++i) {
      int ord = oracle::order(oracle::power(oracle::z_coefficient(of, params, k - i), kf / i));
      if (ord >= 0 && ord < kf) rhs = false;
    }
    if ((oracle::order(of) == k) != rhs) ++disagreements;
  }
  o.require(failures == 0, std::to_string(failures) + " check failures");
  o.require(disagreements == 0, std::to_string(disagreements) + " oracle disagreements");
  o.detail << "200 polynomials, " << failures << " failures";
  return o;
}

// ------------------------------------------------------------------ 7

Outcome invariant_decrease() {
  Outcome o;
  std::size_t edges = 0;
  for (const auto& [name, tree] : corpus().trees) {
    for (std::size_t id = 1; id < tree.size(); ++id) {
      const Chart& c = tree.node(id);
      const Chart& parent = tree.node(*c.parent);
      o.require(c.invariant && parent.invariant, name + ": chart " + std::to_string(id) + " lacks an invariant");
      if (c.invariant && parent.invariant)
        o.require(*c.invariant < *parent.invariant, name + ": invariant did not drop at chart " + std::to_string(id));
      ++edges;
    }
  }
  o.detail << edges << " edges in " << corpus().trees.size() << " trees";
  return o;
}

// ------------------------------------------------------------------ 8

bool ideal_vanishes(const std::vector<Polynomial>& ideal, const std::vector<Rational>& p) {
  return std::all_of(ideal.begin(), ideal.end(), [&](const Polynomial& g) { return g.evaluate(p) == 0; });
}

Outcome morphism_round_trip() {
  Outcome o;
  oracle::Rng rng(99);
  std::size_t checked = 0, on_variety = 0;
  for (const auto& [name, tree] : corpus().trees) {
    const Chart& root = tree.root();
    const FieldSpec& field = root.ambient->field();
    auto coordinate = [&] {
      return field.is_rational() ? Rational(rng.uniform(-5, 5)) / Rational(rng.uniform(1, 3))
                                 : field.normalize(Rational(rng.uniform(0, 50)));
    };
    for (std::size_t id = 1; id < tree.size(); ++id) {
      const Chart& c = tree.node(id);
      const std::size_t n = c.ambient->size();
      int done = 0;
      for (int attempt = 0; done < 20 && attempt < 400; ++attempt) {
        std::vector<Rational> q(n);
        for (auto& v : q) v = coordinate();
        // every other sample is pushed onto the chart variety when a generator is linear in some variable
        if (attempt % 2 && c.ideal.size() == 1 && !c.ideal[0].is_constant()) {
          const Polynomial& g = c.ideal[0];
          for (std::size_t v = 0; v < n; ++v) {
            if (g.degree_in(v) != 1) continue;
            q[v] = 0;
            const Rational g0 = g.evaluate(q);
            q[v] = 1;
            const Rational g1 = g.evaluate(q) - g0;
            if (g1 == 0) break;
            q[v] = field.normalize(-g0 / g1);
            break;
          }
        }
        const bool off = std::none_of(c.exceptional.begin(), c.exceptional.end(),
                                      [&](const ExceptionalDivisor& d) { return d.equation.evaluate(q) == 0; });
        if (!off) continue;
        std::vector<Rational> image;
        for (const auto& im : c.images) image.push_back(field.normalize(oracle::eval(to_oracle(im), q)));
        const bool chart_side = ideal_vanishes(c.ideal, q);
        bool root_side = true;
        for (const auto& g : root.ideal) root_side = root_side && field.normalize(oracle::eval(to_oracle(g), image)) == 0;
        o.require(chart_side == root_side, name + ": round trip fails in chart " + std::to_string(id));
        on_variety += chart_side;
        ++done;
        ++checked;
      }
      o.require(done == 20, name + ": too few points off the divisors in chart " + std::to_string(id));
    }
  }
  o.require(on_variety > 0, "no sample landed on a variety");
  o.detail << checked << " points, " << on_variety << " on the variety";
  return o;
}

// ------------------------------------------------------------------ 9

Outcome determinism() {
  Outcome o;
  auto json_of = [](const std::function<ChartTree()>& run) {
    ChartTree t = run();
    return export_json(t, collect_divisors(t));
  };
  std::vector<std::function<ChartTree()>> runs{
      [] { return resolve_binomial({P("x(1)*x(2)^2*x(3)^3-x(4)^6", x_ring(4))}, FieldSpec{}); },
      [] { return resolve_binomial({P("x(1)^2-x(2)^2*x(3)^2", x_ring(3))}, FieldSpec(2)); },
      [] {
        CurveOptions e;
        e.embedded = true;
        return resolve_plane_curve(PlaneCurve{P("x^2-y^5", ring({"x", "y"}))}, e);
      }};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto a = json_of(runs[i]), b = json_of(runs[i]), c = json_of(runs[i]);
    o.require(a == b && b == c, "run " + std::to_string(i) + " differs between repetitions");
  }
  o.detail << runs.size() << " runs x3 identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Whitney umbrella chart", whitney},
      {"binomial table runs", binomial_table},
      {"characteristic independence", characteristic_independence},
      {"toric continued-fraction oracle", toric_hj},
      {"curve corpus", curve_corpus},
      {"coefficient ideal sweep", coefficient_sweep},
      {"invariant decrease", invariant_decrease},
      {"morphism round trip", morphism_round_trip},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail.str()
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
