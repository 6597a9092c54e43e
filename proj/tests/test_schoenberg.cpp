#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "turnband/errors.hpp"
#include "turnband/models.hpp"
#include "turnband/schoenberg.hpp"
#include "turnband/special_functions.hpp"

using namespace turnband;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(SphereCoeffs, CosineOnCircle) {
  const auto seq = sphere_coeffs([](double th) { return std::cos(th); }, 1, 10);
  EXPECT_NEAR(seq.coeffs(0), 0.0, 1e-12);
  EXPECT_NEAR(seq.coeffs(1), 1.0, 1e-12);
  for (int n = 2; n <= 10; ++n) EXPECT_NEAR(seq.coeffs(n), 0.0, 1e-12);
  EXPECT_NEAR(seq.residual_mass, 0.0, 1e-12);
  EXPECT_TRUE(seq.negative_modes.empty());
}

TEST(SphereCoeffs, RaisedCosineOnTwoSphere) {
  const auto seq = sphere_coeffs([](double th) { return 0.5 * (1.0 + std::cos(th)); }, 2, 8);
  EXPECT_NEAR(seq.coeffs(0), 0.5, 1e-9);
  EXPECT_NEAR(seq.coeffs(1), 0.5, 1e-9);
  for (int n = 2; n <= 8; ++n) EXPECT_NEAR(seq.coeffs(n), 0.0, 1e-9);
}

TEST(SphereCoeffs, BasisFunctionsGiveDeltas) {
  for (int d = 1; d <= 3; ++d) {
    for (int m = 0; m <= 10; ++m) {
      const auto seq = sphere_coeffs([&](double th) { return normalized_gegenbauer(m, d, std::cos(th)); }, d, 12);
      for (int n = 0; n <= 12; ++n) EXPECT_NEAR(seq.coeffs(n), n == m ? 1.0 : 0.0, 1e-10) << d << m << n;
    }
  }
}

TEST(SphereCoeffs, NegativeModeFlagged) {
  const auto seq = sphere_coeffs([](double th) { return 2.0 * std::cos(th) - 1.0; }, 1, 4);
  EXPECT_NEAR(seq.coeffs(0), -1.0, 1e-12);
  ASSERT_EQ(seq.negative_modes.size(), 1u);
  EXPECT_EQ(seq.negative_modes[0], 0);
}

TEST(Reconstruct, ExponentialWithinResidualMass) {
  auto psi = [](double th) { return std::exp(-th); };
  for (int d = 1; d <= 3; ++d) {
    const auto seq = sphere_coeffs(psi, d, 50);
    for (double th = 0.0; th <= kPi; th += 0.1) {
      const auto r = reconstruct(seq, std::nullopt, th);
      EXPECT_LE(std::fabs(r.value - psi(th)), r.error_bound + 1e-8) << d << " " << th;
    }
  }
}

TEST(Reconstruct, ArgumentChecks) {
  const auto seq = SchoenbergSeq::from_coefficients(1, Eigen::VectorXd::Ones(1));
  EXPECT_THROW(reconstruct(seq, 0.5, 0.1), DomainError);
  EXPECT_THROW(reconstruct(seq, std::nullopt, 4.0), DomainError);
  EXPECT_DOUBLE_EQ(reconstruct(seq, std::nullopt, 1.0).value, 1.0);
}

TEST(ProductCoeffs, SeparableModelTabulates) {
  // psi(x, th) = e^{-x} (0.25 + 0.75 cos th) on R x S^1
  const ProductModel psi([](double x, double th) { return std::exp(-x) * (0.25 + 0.75 * std::cos(th)); },
                         ArgumentDomain::Full, 1, SecondFactor::Sphere, 1, "sep");
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(11, 0.0, 2.0);
  const auto seq = product_sphere_coeffs(psi, 3, grid);
  ASSERT_TRUE(seq.tabulated());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(seq.values(0, i), 0.25 * std::exp(-grid(i)), 1e-12);
    EXPECT_NEAR(seq.values(1, i), 0.75 * std::exp(-grid(i)), 1e-12);
    EXPECT_NEAR(seq.values(2, i), 0.0, 1e-12);
  }
  EXPECT_NEAR(seq.at_zero(0) + seq.at_zero(1), 1.0, 1e-12);
  const auto r = reconstruct(seq, 0.3, 1.0);
  EXPECT_NEAR(r.value, std::exp(-0.3) * (0.25 + 0.75 * std::cos(1.0)), 1e-4);
  EXPECT_NEAR(coefficient_function(psi, 1)(0.3), 0.75 * std::exp(-0.3), 1e-12);
  EXPECT_NEAR(seq.coefficient_profile(0)(0.4), 0.25 * std::exp(-0.4), 1e-12);
}

TEST(SphereSurface, KnownValues) {
  EXPECT_NEAR(sphere_surface(1), 2.0, 1e-15);
  EXPECT_NEAR(sphere_surface(2), 2.0 * kPi, 1e-14);
  EXPECT_NEAR(sphere_surface(3), 4.0 * kPi, 1e-14);
}

TEST(PartialFourier, LaplaceFamilyOnTheLine) {
  const ProductModel phi([](double, double r) { return std::exp(-r); }, ArgumentDomain::Full, 1,
                         SecondFactor::Euclidean, 1, "laplace");
  auto decay = [](double r) { return std::exp(-r); };
  for (double w : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    EXPECT_NEAR(partial_fourier(phi, 0.0, w, decay), 2.0 / (1.0 + w * w), 1e-9) << w;
  }
}

TEST(PartialFourier, LaplaceFamilyInSpace) {
  const ProductModel phi([](double, double r) { return std::exp(-r); }, ArgumentDomain::Full, 1,
                         SecondFactor::Euclidean, 3, "laplace3");
  auto decay = [](double r) { return std::exp(-r); };
  for (double w : {0.0, 0.5, 2.0}) {
    const double expected = 8.0 * kPi / std::pow(1.0 + w * w, 2);
    EXPECT_NEAR(partial_fourier(phi, 0.0, w, decay), expected, 1e-8) << w;
  }
}

TEST(InversePartialFourier, RecoversLaplace) {
  auto phi_w = [](double, double w) { return 2.0 / (1.0 + w * w); };
  auto decay = [](double w) { return 2.0 / (1.0 + w * w); };
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;
  for (double y : {0.0, 0.1, 1.0, 3.0}) {
    EXPECT_NEAR(inverse_partial_fourier(phi_w, 0.0, y, 1, decay, cfg), std::exp(-y), 1e-6) << y;
  }
}

TEST(PartialFourier, RejectsSphereFactor) {
  const ProductModel psi([](double, double) { return 1.0; }, ArgumentDomain::Full, 1, SecondFactor::Sphere, 1, "s");
  EXPECT_THROW(partial_fourier(psi, 0.0, 1.0, [](double) { return 1.0; }), DomainError);
}
