#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "grq/error.hpp"
#include "grq/rayleigh.hpp"
#include "grq/sampling.hpp"
#include "oracles.hpp"

namespace {

using grq::GrassmannPoint;
using grq::Matrix;
using grq::SymmetricPSDMatrix;
using grq::TangentVector;
using grq::Vector;

SymmetricPSDMatrix diag321() {
  return SymmetricPSDMatrix(Vector::LinSpaced(3, 3.0, 1.0).asDiagonal().toDenseMatrix());
}

GrassmannPoint line(double t) { return grq::make_point(oracle::circle_point(t)); }

TEST(SymmetricPSDMatrix, RejectsAsymmetric) {
  Matrix a = Matrix::Identity(3, 3);
  a(0, 1) = 0.5;
  try {
    SymmetricPSDMatrix bad(a);
    FAIL();
  } catch (const grq::Error& e) {
    EXPECT_EQ(e.code(), grq::ErrorCode::NotSymmetric);
  }
}

TEST(SymmetricPSDMatrix, RejectsIndefinite) {
  Matrix a = Matrix::Identity(3, 3);
  a(2, 2) = -1.0;
  try {
    SymmetricPSDMatrix bad(a);
    FAIL();
  } catch (const grq::Error& e) {
    EXPECT_EQ(e.code(), grq::ErrorCode::NotPositiveSemiDefinite);
  }
}

TEST(SpectralData, DiagonalExample) {
  const grq::SpectralData s = grq::spectral_data(diag321(), 1);
  EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(2), 1.0, 1e-15);
  EXPECT_NEAR(s.delta, 1.0, 1e-15);
  EXPECT_NEAR(s.gamma, 4.0, 1e-15);
  EXPECT_NEAR(s.f_star, -3.0, 1e-15);
  EXPECT_NEAR(std::abs(s.leading_block.representative()(0, 0)), 1.0, 1e-15);
  EXPECT_TRUE(s.leading_block_unique);
}

TEST(SpectralData, FlatSpectrum) {
  const grq::SpectralData s =
      grq::spectral_data(SymmetricPSDMatrix(Matrix::Identity(3, 3)), 1);
  EXPECT_EQ(s.delta, 0.0);
  EXPECT_EQ(s.gamma, 0.0);
  EXPECT_FALSE(s.leading_block_unique);
}

TEST(SpectralData, ConjugationInvariance) {
  std::mt19937_64 rng(1);
  const Matrix q = grq::random_orthogonal(rng, 3);
  const Matrix a = q * diag321().entries() * q.transpose();
  const grq::SpectralData s = grq::spectral_data(SymmetricPSDMatrix(0.5 * (a + a.transpose())), 1);
  EXPECT_NEAR(s.delta, 1.0, 1e-12);
  EXPECT_NEAR(s.gamma, 4.0, 1e-12);
  EXPECT_NEAR(s.f_star, -3.0, 1e-12);
  EXPECT_LT(grq::distance(s.leading_block, grq::make_point(q.col(0))), 1e-10);
}

TEST(SpectralData, Invariants) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const grq::SpectralData& s = inst.problem.spec;
    const Matrix& a = inst.problem.a.entries();
    const Matrix& v = s.leading_block.representative();
    const Vector lam = s.eigenvalues.head(s.k());
    EXPECT_LT((a * v - v * lam.asDiagonal()).norm(), 1e-9 * a.norm());
    EXPECT_LT((v.transpose() * s.trailing_block).norm(), 1e-10);
    EXPECT_NEAR(s.f_star, -(v.transpose() * a * v).trace(), 1e-9);
    EXPECT_GE(s.delta, 0.0);
  }
}

TEST(SpectralData, BadK) {
  for (Eigen::Index k : {0, 3}) {
    try {
      grq::spectral_data(diag321(), k);
      FAIL();
    } catch (const grq::Error& e) {
      EXPECT_EQ(e.code(), grq::ErrorCode::BadK);
    }
  }
}

TEST(FValue, ClosedFormOnTheCircle) {
  EXPECT_NEAR(grq::f_value(diag321(), line(std::numbers::pi / 4)), -2.5, 1e-15);
  for (double t : {0.1, 0.7, 1.3}) {
    EXPECT_NEAR(grq::f_value(diag321(), line(t)), -(2.0 + std::cos(t) * std::cos(t)), 1e-14);
  }
}

TEST(FValue, MinimizerAndIdentity) {
  std::mt19937_64 rng(3);
  const grq::SpectralData s = grq::spectral_data(diag321(), 1);
  EXPECT_NEAR(grq::f_value(diag321(), s.leading_block), s.f_star, 1e-15);
  const SymmetricPSDMatrix eye(Matrix::Identity(6, 6));
  EXPECT_NEAR(grq::f_value(eye, grq::random_point(rng, 6, 4)), -4.0, 1e-13);
}

TEST(Gradient, ClosedFormOnTheCircle) {
  for (double t : {0.2, 0.7, 1.1}) {
    const TangentVector g = grq::riemannian_gradient(diag321(), line(t));
    Vector expected(3);
    expected << std::sin(t), -std::cos(t), 0.0;
    expected *= -2.0 * std::cos(t) * std::sin(t);
    const double sign = line(t).representative()(0, 0) > 0 ? 1.0 : -1.0;
    EXPECT_LT((g.matrix().col(0) - sign * expected).norm(), 1e-14);
    EXPECT_NEAR(g.norm(), std::abs(std::sin(2 * t)), 1e-14);
  }
}

TEST(Gradient, VanishesAtInvariantSubspace) {
  const grq::SpectralData s = grq::spectral_data(diag321(), 1);
  EXPECT_LT(grq::riemannian_gradient(diag321(), s.leading_block).norm(), 1e-9);
}

TEST(Gradient, DirectionalDerivativeMatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const TangentVector dir = grq::random_tangent(rng, inst.x);
    const TangentVector grad = grq::riemannian_gradient(inst.problem.a, inst.x);
    const double fd = oracle::first_derivative([&](double h) {
      return grq::f_value(inst.problem.a, grq::exp_map(dir.scaled(h)));
    });
    EXPECT_NEAR(fd, grq::inner(grad, dir), 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST(Gradient, SpectralNormBound) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const GrassmannPoint x =
        grq::random_point(rng, inst.problem.spec.n(), inst.problem.spec.k());
    EXPECT_LE(grq::riemannian_gradient(inst.problem.a, x).spectral_norm(),
              inst.problem.spec.gamma / 2 + 1e-9);
  }
}

TEST(Gradient, GapBound) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const grq::SpectralData& s = inst.problem.spec;
    if (s.gamma <= 0.0) continue;
    const double gap = grq::f_value(inst.problem.a, inst.x) - s.f_star;
    const double g2 = std::pow(grq::riemannian_gradient(inst.problem.a, inst.x).norm(), 2);
    EXPECT_GE(gap - g2 / (2 * s.gamma), -1e-9 * (1.0 + gap));
  }
}

TEST(HessianForm, SmoothnessAttained) {
  const GrassmannPoint x = grq::make_point(Matrix::Identity(3, 1));
  Matrix g = Matrix::Zero(3, 1);
  g(2, 0) = 1.0;
  EXPECT_NEAR(grq::hessian_quadratic_form(diag321(), x, g), 4.0, 1e-14);
  EXPECT_EQ(grq::hessian_quadratic_form(diag321(), TangentVector::zero(x)), 0.0);
}

TEST(HessianForm, RejectsNonHorizontal) {
  const GrassmannPoint x = grq::make_point(Matrix::Identity(3, 1));
  try {
    grq::hessian_quadratic_form(diag321(), x, Matrix::Ones(3, 1));
    FAIL();
  } catch (const grq::Error& e) {
    EXPECT_EQ(e.code(), grq::ErrorCode::NotHorizontal);
  }
}

TEST(HessianForm, SecondDerivativeAlongGeodesics) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    TangentVector dir = grq::random_tangent(rng, inst.x);
    dir = dir.scaled(1.0 / dir.norm());
    const double fd = oracle::second_derivative([&](double h) {
      return grq::f_value(inst.problem.a, grq::exp_map(dir.scaled(h)));
    });
    const double form = grq::hessian_quadratic_form(inst.problem.a, dir);
    EXPECT_NEAR(fd, form, 1e-5 * (1.0 + std::abs(form)));
  }
}

TEST(HessianForm, PolarizationIsSymmetric) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const Matrix g = grq::random_tangent(rng, inst.x).matrix();
    const Matrix h = grq::random_tangent(rng, inst.x).matrix();
    auto q = [&](const Matrix& m) {
      return grq::hessian_quadratic_form(inst.problem.a, inst.x, m);
    };
    const double b_gh = 0.25 * (q(g + h) - q(g - h));
    const double direct = 2.0 * ((g.transpose() * h * inst.x.representative().transpose() *
                                  inst.problem.a.entries() * inst.x.representative())
                                     .trace() -
                                 (g.transpose() * inst.problem.a.entries() * h).trace());
    EXPECT_NEAR(b_gh, direct, 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST(HessianMatrix, DiagonalExampleAtMinimizer) {
  const grq::SpectralData s = grq::spectral_data(diag321(), 1);
  const Vector ev = grq::symmetric_eigenvalues(grq::hessian_matrix(diag321(), s.leading_block).h);
  ASSERT_EQ(ev.size(), 2);
  EXPECT_NEAR(ev(0), 4.0, 1e-13);
  EXPECT_NEAR(ev(1), 2.0, 1e-13);
}

TEST(HessianMatrix, FlatObjective) {
  std::mt19937_64 rng(9);
  const SymmetricPSDMatrix eye(Matrix::Identity(5, 5));
  EXPECT_LT(grq::hessian_matrix(eye, grq::random_point(rng, 5, 2)).h.norm(), 1e-13);
}

TEST(HessianMatrix, AgreesWithFormAndClosedForm) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const grq::HessianMatrix hm = grq::hessian_matrix(inst.problem.a, inst.x);
    const Eigen::Index n = inst.x.n();
    const Eigen::Index k = inst.x.k();
    const Matrix m = grq::gaussian_matrix(rng, n - k, k);
    const Vector vec_m = Eigen::Map<const Vector>(m.data(), m.size());
    const double quad = vec_m.dot(hm.h * vec_m);
    const double form = grq::hessian_quadratic_form(inst.problem.a, inst.x, hm.complement * m);
    EXPECT_NEAR(quad, form, 1e-9 * (1.0 + std::abs(form)));

    const Vector ev = grq::symmetric_eigenvalues(hm.h);
    const Vector closed = grq::hessian_eigenvalues_closed_form(inst.problem.a, inst.x);
    EXPECT_LT((ev - closed).cwiseAbs().maxCoeff(), 1e-9 * (1.0 + closed.cwiseAbs().maxCoeff()));
    EXPECT_LE(ev(0), inst.problem.spec.gamma + 1e-9);
  }
}

TEST(Rayleigh, RepresentativeInvariance) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const fixture::Instance inst = fixture::certificate_instance(rng);
    const Matrix q = grq::random_orthogonal(rng, inst.x.k());
    const GrassmannPoint xq = GrassmannPoint::from_orthonormal(inst.x.representative() * q);
    const TangentVector g = grq::random_tangent(rng, inst.x);
    const Matrix gq = g.matrix() * q;
    const auto& a = inst.problem.a;
    EXPECT_NEAR(grq::f_value(a, inst.x), grq::f_value(a, xq), 1e-10);
    EXPECT_NEAR(grq::riemannian_gradient(a, inst.x).norm(),
                grq::riemannian_gradient(a, xq).norm(), 1e-10);
    EXPECT_NEAR(grq::hessian_quadratic_form(a, g), grq::hessian_quadratic_form(a, xq, gq),
                1e-10 * (1.0 + std::abs(grq::hessian_quadratic_form(a, g))));
  }
}

TEST(Rayleigh, DegenerateGamma) {
  const grq::SpectralData s = grq::spectral_data(SymmetricPSDMatrix(Matrix::Identity(3, 3)), 1);
  try {
    grq::nondegenerate_gamma(s);
    FAIL();
  } catch (const grq::Error& e) {
    EXPECT_EQ(e.code(), grq::ErrorCode::DegenerateSpectrum);
  }
}

}  // namespace
