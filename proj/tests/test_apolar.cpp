#include <gtest/gtest.h>

#include <cmath>

#include "fischerlab/apolar.hpp"
#include "fischerlab/expression.hpp"
#include "fischerlab/random.hpp"

using namespace fischerlab;

namespace {

Polynomial P(const char* text, std::size_t dim = 2) { return parse_expression(text, dim); }

// Oracle: the defining form (Q*(D) P)(0), through the operator path.
ComplexRational inner_by_operator(const Polynomial& p, const Polynomial& q) {
  return value_at_zero(apply_operator(conjugate_coefficients(q), p));
}

// Floating-point evaluation of the squared Beauzamy right-hand side.
long double beauzamy_float(const Polynomial& p, const Polynomial& f) {
  long double s = 0;
  for (const auto& [alpha, c] : p.terms())
    s += std::sqrt(static_cast<long double>(c.norm_sq().get_d()) * Rational(alpha.factorial()).get_d());
  const long double m = static_cast<long double>(*f.degree());
  const long double k = static_cast<long double>(*p.degree());
  return apolar_norm_sq(f).get_d() * std::pow(1.0L + m, k) * s * s;
}

}  // namespace

TEST(Apolar, InnerProductExamples) {
  EXPECT_EQ(apolar_inner(P("z1^2"), P("z1^2")), ComplexRational(2));
  EXPECT_EQ(apolar_inner(P("z1^2"), P("z2^2")), ComplexRational());
  EXPECT_EQ(apolar_inner(P("(1+i)*z1"), P("z1")), ComplexRational(1, 1));
  EXPECT_THROW(apolar_inner(P("z1", 1), P("z1", 2)), DimensionMismatch);
}

TEST(Apolar, NormExamples) {
  EXPECT_EQ(apolar_norm_sq(P("z1*z2")), 1);
  EXPECT_EQ(apolar_norm_sq(P("2*z1^2")), 8);
  EXPECT_EQ(apolar_norm_sq(Polynomial(2)), 0);
}

TEST(Apolar, ScaleWeightsAreFactorials) {
  const auto s = apolar_scale(3, 4);
  EXPECT_EQ(s.weights.size(), homogeneous_dimension(3, 4));
  for (const auto& [alpha, w] : s.weights) {
    EXPECT_GT(w, 0);
    EXPECT_EQ(ComplexRational(Rational(w)), apolar_inner(Polynomial::monomial(alpha), Polynomial::monomial(alpha)));
  }
}

TEST(Apolar, AdjointExamples) {
  const auto a = verify_adjoint(P("z1^3"), P("z1"), P("z1^2"));
  EXPECT_EQ(a.lhs, ComplexRational(6));
  EXPECT_EQ(a.rhs, ComplexRational(6));
  EXPECT_TRUE(a.residual.is_zero());
  EXPECT_TRUE(a.holds);

  const auto f = P("z1^2 + i*z2"), g = P("3*z1^2 - z2");
  const auto b = verify_adjoint(f, g, P("1"));
  EXPECT_EQ(b.lhs, apolar_inner(f, g));
  EXPECT_TRUE(b.holds);
}

TEST(Apolar, BeauzamyExamples) {
  const Rational bound = beauzamy_bound(P("z1^2"), P("z1"));
  EXPECT_EQ(apolar_norm_sq(P("z1^3")), 6);
  EXPECT_GE(bound, 8);
  EXPECT_LT(Rational(bound - 8).get_d(), 1e-15);
  EXPECT_EQ(beauzamy_bound(P("z1^2"), Polynomial(2)), 0);
  EXPECT_THROW(beauzamy_bound(P("z1^2 + 1"), P("z1")), DomainError);
}

TEST(Apolar, SupNormRatioExamples) {
  for (std::size_t m = 0; m <= 12; ++m) {
    MultiIndex a(1);
    a[0] = static_cast<MultiIndex::value_type>(m);
    EXPECT_NEAR(lemma17_ratio(Polynomial::monomial(a), 1.0), 1.0, 1e-12);
  }
  EXPECT_NEAR(lemma17_ratio(P("z1*z2"), 0.5), 2.0 / std::sqrt(6.0), 1e-14);
  EXPECT_THROW(lemma17_ratio(Polynomial(2), 1.0), DomainError);
  EXPECT_THROW(lemma17_ratio(P("z1"), 0.0), DomainError);
}

TEST(Property, MonomialOrthogonality) {
  for (std::size_t d = 1; d <= 3; ++d) {
    std::vector<MultiIndex> all;
    for (std::size_t m = 0; m <= 6; ++m)
      for (const auto& a : monomials_of_degree(d, m)) all.push_back(a);
    for (const auto& a : all)
      for (const auto& b : all) {
        const auto v = apolar_inner(Polynomial::monomial(a), Polynomial::monomial(b));
        if (a == b)
          ASSERT_EQ(v, ComplexRational(Rational(a.factorial())));
        else
          ASSERT_TRUE(v.is_zero());
      }
  }
}

TEST(Property, InnerProductMatchesOperatorDefinition) {
  PolynomialSampler rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto p = rng.sparse(d, 5, 6), q = rng.sparse(d, 5, 6);
    EXPECT_EQ(apolar_inner(p, q), inner_by_operator(p, q));
    EXPECT_EQ(apolar_inner(q, p), apolar_inner(p, q).conj());
  }
}

TEST(Property, Sesquilinearity) {
  PolynomialSampler rng(22);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto f = rng.sparse(d, 4), g = rng.sparse(d, 4), h = rng.sparse(d, 4);
    const auto c = rng.coefficient();
    EXPECT_EQ(apolar_inner(c * f + g, h), c * apolar_inner(f, h) + apolar_inner(g, h));
    EXPECT_EQ(apolar_inner(h, c * f), c.conj() * apolar_inner(h, f));
  }
}

TEST(Property, PositiveDefinite) {
  PolynomialSampler rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto f = rng.sparse(d, 5);
    const Rational n = apolar_norm_sq(f);
    EXPECT_EQ(n == 0, f.is_zero());
    EXPECT_GE(n, 0);
    EXPECT_EQ(ComplexRational(n), apolar_inner(f, f));
  }
}

TEST(Property, AdjointIdentityExact) {
  PolynomialSampler rng(24);
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto c = verify_adjoint(rng.sparse(d, 5), rng.sparse(d, 5), rng.sparse(d, 5));
    ASSERT_TRUE(c.holds);
    ASSERT_TRUE(c.residual.is_zero());
  }
}

TEST(Property, BeauzamyBoundHoldsAndIsTight) {
  PolynomialSampler rng(25);
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto p = rng.homogeneous(d, rng.uniform(0, 3));
    const auto f = rng.homogeneous(d, rng.uniform(0, 4));
    const Rational bound = beauzamy_bound(p, f);
    ASSERT_LE(apolar_norm_sq(p * f), bound);
    // The certified bound exceeds the real-valued bound by a relative margin far below float precision.
    EXPECT_NEAR(bound.get_d() / static_cast<double>(beauzamy_float(p, f)), 1.0, 1e-12);
  }
}
