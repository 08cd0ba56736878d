#include <gtest/gtest.h>

#include "resing/polynomial.hpp"
#include "support.hpp"

using namespace resing;
using testing_support::P;
using testing_support::ring;
using testing_support::to_oracle;

namespace {

Polynomial random_polynomial(oracle::Rng& rng, const RingPtr& r, int terms = 4, int deg = 3) {
  return testing_support::from_oracle(oracle::random_poly(rng, r->size(), terms, deg), r);
}

std::vector<Rational> random_rational_point(oracle::Rng& rng, std::size_t n) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) p.emplace_back(rng.uniform(-4, 4), rng.uniform(1, 3));
  return p;
}

}  // namespace

TEST(Field, RejectsCompositeCharacteristic) {
  EXPECT_THROW(FieldSpec(4), DomainError);
  EXPECT_THROW(FieldSpec(1), DomainError);
  EXPECT_NO_THROW(FieldSpec(2));
  EXPECT_NO_THROW(FieldSpec(101));
}

TEST(Field, NormalizeIntoResidues) {
  FieldSpec f5(5);
  EXPECT_EQ(f5.normalize(Rational(-1)), Rational(4));
  EXPECT_EQ(f5.normalize(Rational(1, 2)), Rational(3));
  EXPECT_THROW(f5.normalize(Rational(1, 5)), DomainError);
  EXPECT_EQ(f5.inv(Rational(2)), Rational(3));
}

TEST(Polynomial, RingAxiomsOnRandomTriples) {
  oracle::Rng rng(11);
  auto r = ring({"x", "y", "z"});
  for (int trial = 0; trial < 150; ++trial) {
    auto f = random_polynomial(rng, r), g = random_polynomial(rng, r), h = random_polynomial(rng, r);
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ(f * (g * h), (f * g) * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_TRUE((f - f).is_zero());
    // against the naive expander
    EXPECT_EQ(to_oracle(f * g), to_oracle(f) * to_oracle(g));
  }
}

TEST(Polynomial, RingAxiomsModP) {
  oracle::Rng rng(12);
  auto r = ring({"x", "y"}, 7);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_polynomial(rng, r), g = random_polynomial(rng, r), h = random_polynomial(rng, r);
    EXPECT_EQ((f + g) * h, f * h + g * h);
    const auto prod = f * g * h;
    for (const auto& [e, c] : prod.terms()) {
      EXPECT_GE(c, 0);
      EXPECT_LT(c, 7);
      EXPECT_EQ(denominator(c), 1);
    }
  }
}

TEST(Polynomial, CharacteristicPDerivativeOfPthPower) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    auto r = ring({"x", "y"}, p);
    auto xp = Polynomial::variable(r, 0).pow(p);
    EXPECT_TRUE(xp.derivative(0).is_zero()) << p;
    auto s = (Polynomial::variable(r, 0) + Polynomial::variable(r, 1)).pow(p);
    // Frobenius: (x+y)^p = x^p + y^p
    EXPECT_EQ(s, xp + Polynomial::variable(r, 1).pow(p)) << p;
  }
}

TEST(Polynomial, OrderAtPointExamples) {
  auto r = ring({"x", "y"});
  std::vector<Rational> origin{0, 0}, one{1, 1};
  EXPECT_EQ(order_at_point(P("x^2-y^3", r), origin), ExtendedNat(2));
  EXPECT_EQ(order_at_point(P("x^2-y^3", r), one), ExtendedNat(1));
  auto r3 = ring({"y1", "x2"});
  EXPECT_EQ(order_at_point(P("y1^2-x2", r3), origin), ExtendedNat(1));
  EXPECT_TRUE(order_at_point(Polynomial::zero(r), origin).is_infinite());
  EXPECT_EQ(order_at_point(P("x^2-y^3", r), std::vector<Rational>{2, 0}), ExtendedNat(0));
}

TEST(Polynomial, OrderMatchesBruteForceTranslation) {
  oracle::Rng rng(13);
  auto r = ring({"x", "y", "z"});
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_polynomial(rng, r, 5, 4);
    auto p = random_rational_point(rng, 3);
    if (trial % 3 == 0) p = {0, 0, 0};
    auto ord = order_at_point(f, p);
    int expected = oracle::order(oracle::translate(to_oracle(f), p));
    if (expected < 0)
      EXPECT_TRUE(ord.is_infinite());
    else
      EXPECT_EQ(ord, ExtendedNat(static_cast<std::uint64_t>(expected)));
  }
}

TEST(Polynomial, OrderIsMultiplicative) {
  oracle::Rng rng(14);
  auto r = ring({"x", "y", "z"});
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_polynomial(rng, r), g = random_polynomial(rng, r);
    std::vector<Rational> p{0, 0, 0};
    if (trial % 2) p = random_rational_point(rng, 3);
    EXPECT_EQ(order_at_point(f * g, p), order_at_point(f, p) + order_at_point(g, p));
  }
}

TEST(Polynomial, SubstituteIsAHomomorphism) {
  oracle::Rng rng(15);
  auto r = ring({"x", "y", "z"});
  auto target = ring({"u", "v"});
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Polynomial> images;
    for (int i = 0; i < 3; ++i) images.push_back(random_polynomial(rng, target, 3, 2));
    auto f = random_polynomial(rng, r), g = random_polynomial(rng, r);
    EXPECT_EQ(substitute(f + g, images), substitute(f, images) + substitute(g, images));
    EXPECT_EQ(substitute(f * g, images), substitute(f, images) * substitute(g, images));
    std::vector<oracle::Poly> oimages;
    for (const auto& im : images) oimages.push_back(to_oracle(im));
    EXPECT_EQ(to_oracle(substitute(f, images)), oracle::substitute(to_oracle(f), oimages));
  }
}

TEST(Polynomial, EvaluateAgreesWithOracle) {
  oracle::Rng rng(16);
  auto r = ring({"x", "y", "z"});
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_polynomial(rng, r);
    auto p = random_rational_point(rng, 3);
    EXPECT_EQ(f.evaluate(p), oracle::eval(to_oracle(f), p));
  }
}

TEST(Polynomial, JacobianGenerators) {
  auto r = ring({"x(1)", "x(2)", "x(3)"});
  auto f = P("x(1)^2-x(2)*x(3)^2", r);
  auto gens = jacobian_generators(f);
  ASSERT_EQ(gens.size(), 4u);
  EXPECT_EQ(gens[0], f);
  EXPECT_EQ(gens[1], P("2*x(1)", r));
  EXPECT_EQ(gens[2], P("-x(3)^2", r));
  EXPECT_EQ(gens[3], P("-2*x(2)*x(3)", r));
  // common zeros on a grid are exactly the line x1 = x3 = 0
  auto g = oracle::grid(2, 1);
  for (const auto& a : g)
    for (const auto& b : g)
      for (const auto& c : g) {
        std::vector<Rational> q{a, b, c};
        bool all = std::all_of(gens.begin(), gens.end(), [&](const Polynomial& h) { return h.evaluate(q) == 0; });
        EXPECT_EQ(all, a == 0 && c == 0);
      }
  EXPECT_THROW(jacobian_generators(Polynomial::zero(r)), DomainError);
}

TEST(Polynomial, JacobianOfLinearAndOfTwoLines) {
  auto r = ring({"x", "y"});
  auto lin = jacobian_generators(P("3*x-2*y+1", r));
  EXPECT_TRUE(lin[1].is_constant() && !lin[1].is_zero());
  auto sing = oracle::grid_singular(to_oracle(P("x^2-y^2", r)));
  ASSERT_EQ(sing.size(), 1u);
  EXPECT_EQ(sing[0], (std::vector<Rational>{0, 0}));
}

TEST(Polynomial, FactorOutMonomial) {
  auto r = ring({"y(1)", "x(2)", "x(3)"});
  auto [m, g] = factor_out_monomial(P("x(3)^2*y(1)^2-x(2)*x(3)^2", r));
  EXPECT_EQ(m, (Exponent{0, 0, 2}));
  EXPECT_EQ(g, P("y(1)^2-x(2)", r));

  auto r2 = ring({"x", "y"});
  auto [m2, g2] = factor_out_monomial(P("y^2-x", r2));
  EXPECT_EQ(m2, (Exponent{0, 0}));
  EXPECT_EQ(g2, P("y^2-x", r2));
  auto [m3, g3] = factor_out_monomial(P("x^2*y+x*y^2", r2));
  EXPECT_EQ(m3, (Exponent{1, 1}));
  EXPECT_EQ(g3, P("x+y", r2));
  EXPECT_THROW(factor_out_monomial(Polynomial::zero(r2)), DomainError);
}

TEST(Polynomial, FactorOutMonomialLeavesNoContent) {
  oracle::Rng rng(17);
  auto r = ring({"x", "y", "z"});
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_polynomial(rng, r) * Polynomial::monomial(r, {static_cast<std::uint32_t>(rng.uniform(0, 2)), 1,
                                                                 static_cast<std::uint32_t>(rng.uniform(0, 3))});
    auto [m, g] = factor_out_monomial(f);
    EXPECT_EQ(monomial_content(g), (Exponent{0, 0, 0}));
    EXPECT_EQ(Polynomial::monomial(r, m) * g, f);
  }
}

TEST(Parse, Grammar) {
  auto r = ring({"x(1)", "x(2)", "x(3)"});
  auto f = P("x(1)^2 - x(2) * x(3)^2", r);
  EXPECT_EQ(f.term_count(), 2u);
  EXPECT_EQ(f.coefficient({2, 0, 0}), Rational(1));
  EXPECT_EQ(f.coefficient({0, 1, 2}), Rational(-1));
  EXPECT_TRUE(P("0", r).is_zero());
  EXPECT_EQ(P("2^3*x(1)", r), P("8*x(1)", r));
  EXPECT_EQ(P("-x(1)^2", r), -P("x(1)^2", r));  // ^ binds tighter than unary minus
  EXPECT_EQ(P("(x(1)+x(2))^2", r), P("x(1)^2+2*x(1)*x(2)+x(2)^2", r));
}

TEST(Parse, Errors) {
  auto r = ring({"x(1)", "x(2)", "x(3)"});
  EXPECT_THROW(P("x(4)+1", r), UnknownVariableError);
  try {
    P("x(1) + x(4)", r);
    FAIL();
  } catch (const UnknownVariableError& e) {
    EXPECT_EQ(e.name(), "x(4)");
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(P("x(1) x(2)", r), ParseError);  // no implicit multiplication
  EXPECT_THROW(P("x(1)+", r), ParseError);
  EXPECT_THROW(P("(x(1)", r), ParseError);
}

TEST(Parse, InferVariablesNaturalOrder) {
  auto names = infer_variables({"x(10)*x(2) - x(1)", "y + x(2)'"});
  EXPECT_EQ(names, (std::vector<std::string>{"x(1)", "x(2)", "x(2)'", "x(10)", "y"}));
}

TEST(Parse, PrintParseRoundTrip) {
  oracle::Rng rng(18);
  auto r = ring({"x(1)", "x(2)", "y"});
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_polynomial(rng, r, 5, 4);
    EXPECT_EQ(P(f.to_string(), r), f) << f.to_string();
  }
}
