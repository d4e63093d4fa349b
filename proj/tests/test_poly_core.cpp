#include <gtest/gtest.h>

#include <vector>

#include "fischerlab/expression.hpp"
#include "fischerlab/polynomial.hpp"
#include "fischerlab/random.hpp"

using namespace fischerlab;

namespace {

Polynomial P(const char* text, std::size_t dim = 2) { return parse_expression(text, dim); }

// Independent oracle: evaluate by expanding each monomial as repeated products.
ComplexRational evaluate(const Polynomial& f, const std::vector<ComplexRational>& z) {
  ComplexRational acc;
  for (const auto& [alpha, c] : f.terms()) {
    ComplexRational term = c;
    for (std::size_t i = 0; i < alpha.dim(); ++i)
      for (std::size_t e = 0; e < alpha[i]; ++e) term = term * z[i];
    acc += term;
  }
  return acc;
}

// Independent oracle for d/dz_i, term by term.
Polynomial derivative(const Polynomial& f, std::size_t i) {
  Polynomial out(f.dim());
  for (const auto& [alpha, c] : f.terms()) {
    if (alpha[i] == 0) continue;
    MultiIndex beta = alpha;
    beta[i] -= 1;
    out.add_term(beta, c * ComplexRational(static_cast<long>(alpha[i])));
  }
  return out;
}

Polynomial apply_by_derivatives(const Polynomial& q, const Polynomial& f) {
  Polynomial out(f.dim());
  for (const auto& [alpha, c] : q.terms()) {
    Polynomial g = f;
    for (std::size_t i = 0; i < alpha.dim(); ++i)
      for (std::size_t e = 0; e < alpha[i]; ++e) g = derivative(g, i);
    out += c * g;
  }
  return out;
}

std::vector<ComplexRational> random_point(PolynomialSampler& rng, std::size_t dim) {
  std::vector<ComplexRational> z;
  for (std::size_t i = 0; i < dim; ++i) z.push_back(rng.coefficient(4, 3));
  return z;
}

}  // namespace

TEST(Scalar, FieldOperations) {
  const ComplexRational a(Rational(1, 2), Rational(-3));
  const ComplexRational b(Rational(2), Rational(1, 3));
  EXPECT_EQ(a * b / b, a);
  EXPECT_EQ(a.conj().conj(), a);
  EXPECT_EQ(a.norm_sq(), Rational(37, 4));
  EXPECT_EQ(ComplexRational::i() * ComplexRational::i(), ComplexRational(-1));
  EXPECT_THROW(a / ComplexRational(), DomainError);
}

TEST(Scalar, FactorialsAreExact) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(25), Integer("15511210043330985984000000"));
  EXPECT_EQ(falling_factorial(10, 3), 720);
  EXPECT_EQ(falling_factorial(3, 5), 0);
}

TEST(Scalar, RationalStringsAreCanonical) {
  EXPECT_EQ(rational_string(Rational(4, -6)), "-2/3");
  EXPECT_EQ(rational_string(Rational(5)), "5/1");
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("1/-2"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(Scalar, CertifiedSqrtIsAnUpperBound) {
  for (long n : {2L, 3L, 5L, 1000003L}) {
    const Rational x(n, 7);
    const Rational s = certified_sqrt_upper(x);
    EXPECT_GE(s * s, x);
    EXPECT_LT(Rational(s * s - x).get_d(), 1e-15 * x.get_d() + 1e-30);
  }
  EXPECT_EQ(certified_sqrt_upper(Rational(9, 4)), Rational(3, 2));
}

TEST(MultiIndex, GradedLexOrdering) {
  const auto basis = monomials_of_degree(3, 2);
  ASSERT_EQ(basis.size(), 6u);
  EXPECT_EQ(basis.front(), MultiIndex({2, 0, 0}));
  EXPECT_EQ(basis.back(), MultiIndex({0, 0, 2}));
  GradedLexOrder less;
  EXPECT_TRUE(less(MultiIndex({0, 3}), MultiIndex({1, 1})));  // higher degree first
  for (std::size_t i = 0; i + 1 < basis.size(); ++i) EXPECT_TRUE(less(basis[i], basis[i + 1]));
}

TEST(MultiIndex, HomogeneousDimensionMatchesEnumeration) {
  for (std::size_t d = 1; d <= 4; ++d)
    for (std::size_t m = 0; m <= 7; ++m) EXPECT_EQ(homogeneous_dimension(d, m), monomials_of_degree(d, m).size());
  EXPECT_EQ(MultiIndex({3, 2}).factorial(), 12);
}

TEST(Polynomial, AdditionExamples) {
  EXPECT_TRUE((P("z1") + P("-z1")).is_zero());
  EXPECT_EQ(P("1 + z1") + P("z1"), P("1 + 2*z1"));
  EXPECT_EQ(P("i*z2") + P("i*z2"), P("2i*z2"));
}

TEST(Polynomial, MultiplicationExamples) {
  EXPECT_EQ(P("z1 + 1") * P("z1 - 1"), P("z1^2 - 1"));
  EXPECT_EQ(P("z1^2 + 1") * P("z1^2 - 1"), P("z1^4 - 1"));
  EXPECT_TRUE((Polynomial(2) * P("z1 + 3*z2^2")).is_zero());
}

TEST(Polynomial, ZeroDegreeIsSentinel) {
  const Polynomial zero(3);
  EXPECT_FALSE(zero.degree().has_value());
  EXPECT_TRUE(zero.is_homogeneous());
  EXPECT_EQ(P("z1*z2^3 + 1").degree(), 4u);
  EXPECT_EQ(P("z1*z2^3 + z1").low_degree(), 1u);
}

TEST(Polynomial, DimensionMismatchThrows) {
  EXPECT_THROW(P("z1", 1) + P("z1", 2), DimensionMismatch);
  EXPECT_THROW(P("z1", 1) * P("z1", 2), DimensionMismatch);
}

TEST(Polynomial, ConjugationExamples) {
  EXPECT_EQ(conjugate_coefficients(P("(2+3i)*z1")), P("(2-3i)*z1"));
  EXPECT_EQ(conjugate_coefficients(P("z1^2 - 5/2*z2 + 1")), P("z1^2 - 5/2*z2 + 1"));
  EXPECT_EQ(conjugate_coefficients(P("i*z1*z2 - z2")), P("-i*z1*z2 - z2"));
}

TEST(Polynomial, ApplyOperatorExamples) {
  EXPECT_EQ(apply_operator(P("z1"), P("z1^3")), P("3*z1^2"));
  EXPECT_EQ(apply_operator(P("z1^2"), P("z1^2")), P("2"));
  EXPECT_EQ(apply_operator(P("z1*z2"), P("z1^2*z2")), P("2*z1"));
  EXPECT_TRUE(apply_operator(P("z2^3"), P("z1^5 + z2^2")).is_zero());
}

TEST(Polynomial, HomogeneousExpansionExamples) {
  const auto s = homogeneous_expansion(P("1 + z1 + z1*z2"));
  ASSERT_EQ(s.truncation(), 2u);
  EXPECT_EQ(s.slice(0), P("1"));
  EXPECT_EQ(s.slice(1), P("z1"));
  EXPECT_EQ(s.slice(2), P("z1*z2"));

  const auto h = homogeneous_expansion(P("z1^3 - 2*z1*z2^2"));
  for (std::size_t m = 0; m <= h.truncation(); ++m) EXPECT_EQ(h.slice(m).is_zero(), m != 3);

  const auto z = homogeneous_expansion(Polynomial(2), 4);
  for (std::size_t m = 0; m <= 4; ++m) EXPECT_TRUE(z.slice(m).is_zero());
}

TEST(Polynomial, GradedProductSliceExamples) {
  const auto p = P("1 + z1^2", 1);
  const auto phi = homogeneous_expansion(P("1 + z1", 1));
  EXPECT_EQ(graded_product_slice(p, phi, 2), P("z1^2", 1));
  EXPECT_EQ(graded_product_slice(p, phi, 3), P("z1^3", 1));

  const auto pk = P("z1^2 - z1*z2");
  GradedSeries single(2, 3);
  single.slices[3] = P("z2^3");
  for (std::size_t n = 0; n < 5; ++n) EXPECT_TRUE(graded_product_slice(pk, single, n).is_zero());
  EXPECT_FALSE(graded_product_slice(pk, single, 5).is_zero());
  EXPECT_THROW(graded_product_slice(pk, single, 6), DomainError);
}

TEST(Property, RingAxioms) {
  PolynomialSampler rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto f = rng.sparse(d, 4), g = rng.sparse(d, 4), h = rng.sparse(d, 4);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(Property, ProductAgreesWithPointEvaluation) {
  PolynomialSampler rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto f = rng.sparse(d, 5), g = rng.sparse(d, 5);
    const auto z = random_point(rng, d);
    EXPECT_EQ(evaluate(f * g, z), evaluate(f, z) * evaluate(g, z));
    EXPECT_EQ(evaluate(f + g, z), evaluate(f, z) + evaluate(g, z));
  }
}

TEST(Property, OperatorsComposeMultiplicatively) {
  PolynomialSampler rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto q = rng.sparse(d, 3, 3), r = rng.sparse(d, 3, 3), f = rng.sparse(d, 6, 6);
    EXPECT_EQ(apply_operator(q, apply_operator(r, f)), apply_operator(q * r, f));
    EXPECT_EQ(apply_operator(q, f), apply_by_derivatives(q, f));
  }
}

TEST(Property, ConjugationIsMultiplicativeInvolution) {
  PolynomialSampler rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto p = rng.sparse(d, 4), q = rng.sparse(d, 4);
    EXPECT_EQ(conjugate_coefficients(conjugate_coefficients(p)), p);
    EXPECT_EQ(conjugate_coefficients(p * q), conjugate_coefficients(p) * conjugate_coefficients(q));
  }
}

TEST(Property, GradedSlicesSumToProduct) {
  PolynomialSampler rng(15);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto p = rng.nonhomogeneous(d, rng.uniform(1, 3));
    const auto phi = rng.sparse(d, 4);
    const std::size_t trunc = 4;
    const auto series = homogeneous_expansion(phi, trunc);
    const std::size_t top = trunc + *p.degree();
    Polynomial sum(d);
    for (std::size_t n = 0; n <= top; ++n) {
      const auto slice = graded_product_slice(p, series, n);
      EXPECT_TRUE(slice.is_homogeneous());
      sum += slice;
    }
    EXPECT_EQ(sum, p * phi);
  }
}

TEST(Property, ExpansionReassembles) {
  PolynomialSampler rng(16);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto f = rng.sparse(d, 6, 8);
    const auto s = homogeneous_expansion(f);
    EXPECT_NO_THROW(s.validate());
    EXPECT_EQ(s.to_polynomial(), f);
    for (std::size_t m = 0; m <= s.truncation(); ++m) EXPECT_EQ(s.slice(m), f.homogeneous_part(m));
  }
}
