#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <zrp/operator_model.hpp>
#include <zrp/parse.hpp>
#include <zrp/spectral_classifier.hpp>

#include "support.hpp"

using namespace zrp;
using zrp::testing::random_coupling;
using zrp::testing::random_tau;

TEST(Coupling, RejectsNonFiniteEntries) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(CouplingMatrix(inf, 0.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(CouplingMatrix(0.0, 0.0, cplx(0.0, std::nan("")), 0.0), std::invalid_argument);
}

TEST(Coupling, SymmetryClasses) {
  EXPECT_EQ(symmetry_class({-2.0, 0.0, 0.0, 0.0}), SymmetryClass::Both);
  EXPECT_EQ(symmetry_class({-3.0, cplx(1, 1), cplx(1, -1), 0.0}), SymmetryClass::SelfAdjoint);
  EXPECT_EQ(symmetry_class({5.0, 4.0 * I, 3.0 * I, -1.0}), SymmetryClass::PTSymmetric);
  EXPECT_EQ(symmetry_class({2.0 * I, 0.0, 0.0, 0.0}), SymmetryClass::Neither);
  EXPECT_EQ(symmetry_class({-2.0, I, -I, 1.0}), SymmetryClass::Both);
}

TEST(Coupling, AdjointIsConjugateTranspose) {
  const CouplingMatrix t{cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8)};
  const CouplingMatrix s = t.adjoint();
  EXPECT_EQ(s.a, cplx(1, -2));
  EXPECT_EQ(s.b, cplx(5, -6));
  EXPECT_EQ(s.c, cplx(3, -4));
  EXPECT_EQ(s.d, cplx(7, -8));
  EXPECT_EQ(s.adjoint(), t);
}

TEST(OperatorModel, CharPolyIsBoundaryDeterminant) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    const auto t = random_coupling(rng);
    const cplx tau = random_tau(rng);
    const auto m = boundary_matrix(t, tau);
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    EXPECT_LE(std::abs(det - char_poly(t, tau)), 1e-12 * char_poly_scale(t, tau));
  }
}

TEST(OperatorModel, BoundaryMatrixColumnsAreDefectsOfBasis) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 100; ++n) {
    const auto t = random_coupling(rng);
    const cplx tau = random_tau(rng);
    const auto m = boundary_matrix(t, tau);
    const Vec2 d1 = boundary_defect(t, h1(tau).traces());
    const Vec2 d2 = boundary_defect(t, h2(tau).traces());
    for (int r = 0; r < 2; ++r) {
      EXPECT_LE(std::abs(d1[r] - m[r][0]), 1e-12 * (1 + std::abs(m[r][0])));
      EXPECT_LE(std::abs(d2[r] - m[r][1]), 1e-12 * (1 + std::abs(m[r][1])));
    }
  }
}

TEST(OperatorModel, TracesOfBasisFunctions) {
  const cplx tau{0.5, 1.5};
  const auto tr1 = h1(tau).traces();
  EXPECT_EQ(tr1.f_plus, cplx(1.0));
  EXPECT_EQ(tr1.f_minus, cplx(1.0));
  const auto g0 = gamma0(tr1);
  const auto g1 = gamma1(tr1);
  EXPECT_NEAR(std::abs(g0[1]), 0.0, 1e-15); // h1 is even: f'(+0) = -f'(-0)
  EXPECT_NEAR(std::abs(g1[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g1[0] - 2.0 * I * tau), 0.0, 1e-15);
}

TEST(OperatorModel, EigenfunctionsLieInTheDomainAndSolveTheEquation) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int n = 0; n < 2000 && checked < 300; ++n) {
    const auto t = random_coupling(rng);
    for (const auto& r : classify(t).eigenvalues) {
      const auto f = eigenfunction(t, r.tau);
      EXPECT_LE(boundary_residual(t, f.traces()), 1e-10 * (1 + std::abs(r.tau)) * char_poly_scale(t, r.tau));
      EXPECT_EQ(f.helmholtz(r.tau).max_coef(), 0.0);
      EXPECT_TRUE(f.square_integrable());
      ++checked;
    }
  }
  EXPECT_GE(checked, 300);
}

TEST(OperatorModel, EigenfunctionPreconditions) {
  EXPECT_THROW(eigenfunction({-2.0, 0.0, 0.0, 0.0}, cplx(0.0, -1.0)), not_decaying);
  EXPECT_THROW(eigenfunction({-2.0, 0.0, 0.0, 0.0}, cplx(0.0, 2.0)), not_a_root);
  EXPECT_NO_THROW(eigenfunction({-2.0, 0.0, 0.0, 0.0}, cplx(0.0, 1.0)));
}

TEST(ExpSum, NormMatchesQuadrature) {
  std::mt19937_64 rng(14);
  using boost::math::quadrature::gauss_kronrod;
  for (int n = 0; n < 20; ++n) {
    const auto f = zrp::testing::random_input(rng, 3);
    const double right = gauss_kronrod<double, 61>::integrate([&](double x) { return std::norm(f(x)); }, 0.0,
                                                              std::numeric_limits<double>::infinity(), 15, 1e-13);
    const double left = gauss_kronrod<double, 61>::integrate([&](double x) { return std::norm(f(x)); },
                                                             -std::numeric_limits<double>::infinity(), 0.0, 15, 1e-13);
    EXPECT_NEAR(f.norm_sq(), right + left, 1e-9 * (right + left));
  }
}

TEST(ExpSum, BasisNormsAndOrthogonality) {
  const cplx tau{0.7, 0.4};
  EXPECT_NEAR(h1(tau).norm_sq(), 1.0 / tau.imag(), 1e-14);
  EXPECT_NEAR(h2(tau).norm_sq(), 1.0 / tau.imag(), 1e-14);
  const cplx c1{0.3, -1.2}, c2{2.0, 0.5};
  EXPECT_NEAR((c1 * h1(tau) + c2 * h2(tau)).norm_sq(), (std::norm(c1) + std::norm(c2)) / tau.imag(), 1e-12);
}

TEST(ExpSum, SimplifyMergesEqualRates) {
  TwoSidedExpSum f{{{1.0, -1.0}, {2.0, -1.0}, {3.0, -2.0}, {-3.0, -2.0}}, {}};
  const auto s = f.simplified();
  ASSERT_EQ(s.right.size(), 1u);
  EXPECT_EQ(s.right[0].coef, cplx(3.0));
}

TEST(ComplexLiteral, Grammar) {
  EXPECT_EQ(parse_complex("-2"), cplx(-2.0, 0.0));
  EXPECT_EQ(parse_complex("2i"), cplx(0.0, 2.0));
  EXPECT_EQ(parse_complex("i"), cplx(0.0, 1.0));
  EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parse_complex("+i"), cplx(0.0, 1.0));
  EXPECT_EQ(parse_complex("1+i"), cplx(1.0, 1.0));
  EXPECT_EQ(parse_complex("1-2.5i"), cplx(1.0, -2.5));
  EXPECT_EQ(parse_complex("-2+1i"), cplx(-2.0, 1.0));
  EXPECT_EQ(parse_complex("1e-3-2e+1i"), cplx(1e-3, -20.0));
  EXPECT_EQ(parse_complex("1e+2"), cplx(100.0, 0.0));
  EXPECT_EQ(parse_complex(".5"), cplx(0.5, 0.0));
}

TEST(ComplexLiteral, RejectsGarbage) {
  for (const char* s : {"", "x", "1x", "1+", "1+2", "i1", "1 + 2i", "nan", "inf", "1++2i", "1ii", "0x10"})
    EXPECT_FALSE(parse_complex(s).has_value()) << s;
}
