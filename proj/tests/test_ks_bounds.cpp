#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fischerlab/apolar.hpp"
#include "fischerlab/expression.hpp"
#include "fischerlab/ks_bounds.hpp"
#include "fischerlab/random.hpp"

using namespace fischerlab;

namespace {

Polynomial P(const char* text, std::size_t dim = 2) { return parse_expression(text, dim); }

// Oracle: build the orthonormal-basis matrix directly in long double and take
// the dense SVD; shares no code with the Jacobi path.
double svd_min_singular_value(const Polynomial& pk, std::size_t m) {
  const auto src = monomials_of_degree(pk.dim(), m);
  const auto dst = monomials_of_degree(pk.dim(), m + *pk.degree());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [gamma, c] : pk.terms()) {
      const MultiIndex beta = src[j] + gamma;
      std::size_t row = 0;
      while (!(dst[row] == beta)) ++row;
      long double ratio = 1;
      for (std::size_t i = 0; i < beta.dim(); ++i)
        for (auto t = src[j][i] + 1; t <= beta[i]; ++t) ratio *= t;
      a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
          std::complex<double>(c.real().get_d(), c.imag().get_d()) * static_cast<double>(std::sqrt(ratio));
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues().minCoeff();
}

}  // namespace

TEST(MultiplicationMatrix, Examples) {
  const auto a = multiplication_matrix(P("z1", 1), 1);
  ASSERT_EQ(a.rows, 1u);
  ASSERT_EQ(a.cols, 1u);
  EXPECT_NEAR(a(0, 0).real(), std::sqrt(2.0), 1e-15);

  const auto b = multiplication_matrix(P("z1^2"), 1);
  ASSERT_EQ(b.cols, 2u);
  double norms[2] = {0, 0};
  Complex dot = 0;
  for (std::size_t r = 0; r < b.rows; ++r) {
    norms[0] += std::norm(b(r, 0));
    norms[1] += std::norm(b(r, 1));
    dot += std::conj(b(r, 0)) * b(r, 1);
  }
  EXPECT_NEAR(std::sqrt(norms[0]), std::sqrt(6.0), 1e-14);
  EXPECT_NEAR(std::sqrt(norms[1]), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(dot), 0.0, 1e-15);

  EXPECT_THROW(multiplication_matrix(Polynomial(2), 1), DomainError);
  EXPECT_THROW(multiplication_matrix(P("z1^2 + z2"), 1), DomainError);
}

TEST(Jacobi, MatchesDenseEigenSolver) {
  std::mt19937_64 rng(50);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 9;
    DenseMatrix<Complex> h(n, n);
    Eigen::MatrixXcd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Complex z = i == j ? Complex(normal(rng), 0) : Complex(normal(rng), normal(rng));
        h(i, j) = z;
        h(j, i) = std::conj(z);
        e(i, j) = z;
        e(j, i) = std::conj(z);
      }
    const auto mine = jacobi_hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(e);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(mine.values[i], ref.eigenvalues()(static_cast<Eigen::Index>(i)), 1e-9);
    // A v = lambda v for every returned pair.
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) {
        Complex av = 0;
        for (std::size_t k = 0; k < n; ++k) av += h(r, k) * mine.vectors(k, c);
        EXPECT_NEAR(std::abs(av - mine.values[c] * mine.vectors(r, c)), 0.0, 1e-8);
      }
  }
}

TEST(Jacobi, RejectsNonSquare) { EXPECT_THROW(jacobi_hermitian_eigen(DenseMatrix<Complex>(2, 3)), DomainError); }

TEST(MinSingularValue, PowerOfOneVariableClosedForm) {
  for (std::size_t k = 1; k <= 3; ++k) {
    MultiIndex a(2);
    a[0] = static_cast<MultiIndex::value_type>(k);
    const auto pk = Polynomial::monomial(a);
    const double expect = std::sqrt(std::tgamma(static_cast<double>(k) + 1.0));
    for (std::size_t m = 0; m <= 6; ++m) {
      const auto sv = min_singular_value(pk, m);
      EXPECT_NEAR(sv.mu, expect, 1e-8);
      EXPECT_TRUE(sv.certified);
    }
  }
  EXPECT_NEAR(min_singular_value(P("z1^2", 1), 1).mu, std::sqrt(6.0), 1e-12);
}

TEST(MinSingularValue, AgreesWithSvdOracle) {
  for (const char* text : {"z1^2 + z2^2", "z1*z2", "z1^2 - i*z1*z2 + 1/2*z2^2", "(1 + 2 i)*z1^3 - z2^3"})
    for (std::size_t m = 0; m <= 6; ++m) {
      const auto pk = P(text);
      const auto sv = min_singular_value(pk, m);
      EXPECT_NEAR(sv.mu, svd_min_singular_value(pk, m), 1e-8) << text << " m=" << m;
      EXPECT_TRUE(sv.certified) << text << " m=" << m;
    }
  PolynomialSampler rng(51);
  for (int t = 0; t < 10; ++t) {
    const auto pk = rng.homogeneous(3, rng.uniform(1, 3));
    const std::size_t m = rng.uniform(0, 4);
    EXPECT_NEAR(min_singular_value(pk, m).mu, svd_min_singular_value(pk, m), 1e-8);
  }
}

TEST(KSScan, ClosedFormFit) {
  for (std::size_t k = 1; k <= 3; ++k) {
    MultiIndex a(2);
    a[0] = static_cast<MultiIndex::value_type>(k);
    const auto rep = ks_scan(Polynomial::monomial(a), 0, 8);
    ASSERT_TRUE(rep.tau_fit.has_value());
    EXPECT_LT(std::fabs(*rep.tau_fit), 0.05);
    EXPECT_NEAR(*rep.c_fit, std::sqrt(std::tgamma(static_cast<double>(k) + 1.0)), 1e-6);
    EXPECT_TRUE(rep.all_certified);
    EXPECT_EQ(rep.entries.size(), 9u);
  }
}

TEST(KSScan, SinglePointHasNoFit) {
  const auto rep = ks_scan(P("z1*z2"), 3, 3);
  EXPECT_FALSE(rep.tau_fit.has_value());
  EXPECT_FALSE(rep.c_fit.has_value());
  EXPECT_DOUBLE_EQ(rep.c_certified, rep.entries.front().mu);
  EXPECT_EQ(rep.tau_certified, 0.0);
  EXPECT_THROW(ks_scan(P("z1*z2"), 4, 3), DomainError);
}

TEST(KSScan, MixedMonomialIsPositiveAndCertified) {
  const auto rep = ks_scan(P("z1*z2"), 0, 8);
  EXPECT_TRUE(rep.all_certified);
  for (const auto& e : rep.entries) {
    EXPECT_GT(e.mu, 0.0);
    EXPECT_EQ(e.dim, e.m + 1);
  }
  EXPECT_GT(*rep.c_fit, 0.0);
}

TEST(Property, CertifiedPairHoldsOnWindow) {
  PolynomialSampler rng(52);
  for (int t = 0; t < 8; ++t) {
    const auto pk = rng.homogeneous(2, rng.uniform(1, 3));
    const auto rep = ks_scan(pk, 0, 6);
    for (const auto& e : rep.entries) EXPECT_GE(e.mu, rep.c_certified);
  }
}

TEST(Property, SampledVectorsRespectMinimum) {
  PolynomialSampler rng(53);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = rng.uniform(2, 3), k = rng.uniform(1, 3), m = rng.uniform(0, 4);
    const auto pk = rng.homogeneous(d, k);
    const double mu = min_singular_value(pk, m).mu;
    for (int s = 0; s < 20; ++s) {
      const auto g = rng.homogeneous(d, m, 4);
      const double ratio = std::sqrt(Rational(apolar_norm_sq(pk * g) / apolar_norm_sq(g)).get_d());
      EXPECT_GE(ratio, mu - 1e-6);
    }
  }
}

TEST(Property, BeauzamyDominatesSingularValues) {
  PolynomialSampler rng(54);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = rng.uniform(2, 3), k = rng.uniform(1, 3), m = rng.uniform(0, 4);
    const auto pk = rng.homogeneous(d, k);
    const double upper = std::pow(1.0 + static_cast<double>(m), static_cast<double>(k) / 2.0) *
                         coefficient_root_sum_upper(pk).get_d();
    EXPECT_LE(min_singular_value(pk, m).mu, upper);
  }
}

TEST(TauAdmissible, Examples) {
  EXPECT_TRUE(check_tau_admissible(3, 2.0, 2).admissible);
  EXPECT_FALSE(check_tau_admissible(3, 2.5, 2).admissible);
  EXPECT_TRUE(check_tau_admissible(3, 5.0, 1).admissible);
  EXPECT_FALSE(check_tau_admissible(3, -1.0, 2).admissible);
}
