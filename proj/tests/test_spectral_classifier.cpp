#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <zrp/spectral_classifier.hpp>

#include "support.hpp"

using namespace zrp;
using zrp::testing::random_coupling;
using zrp::testing::random_pt;

namespace {

double root_residual(const CouplingMatrix& t, cplx tau) {
  return std::abs(char_poly(t, tau)) / char_poly_scale(t, tau);
}

} // namespace

TEST(SolveQuadratic, CancellationFreeSmallRoot) {
  const auto s = solve_quadratic<double>(1.0, 1e8, 1.0);
  ASSERT_EQ(s.roots.size(), 2u);
  const cplx small = std::abs(s.roots[0].tau) < std::abs(s.roots[1].tau) ? s.roots[0].tau : s.roots[1].tau;
  EXPECT_NEAR(small.real(), -1e-8, 1e-22);
}

TEST(SolveQuadratic, DegreeDrop) {
  const auto lin = solve_quadratic<double>(0.0, 2.0, -4.0);
  EXPECT_EQ(lin.degree, 1);
  ASSERT_EQ(lin.roots.size(), 1u);
  EXPECT_EQ(lin.roots[0].tau, cplx(2.0));
  const auto cst = solve_quadratic<double>(0.0, 0.0, 3.0);
  EXPECT_EQ(cst.degree, 0);
  EXPECT_FALSE(cst.identically_zero);
  EXPECT_TRUE(solve_quadratic<double>(0.0, 0.0, 0.0).identically_zero);
}

TEST(SolveQuadratic, ScalingInvariance) {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 1000; ++n) {
    const cplx A = zrp::testing::random_complex(rng, 5), B = zrp::testing::random_complex(rng, 5),
               C = zrp::testing::random_complex(rng, 5);
    const cplx s = std::polar(std::pow(10.0, zrp::testing::uniform(rng, -6, 6)), zrp::testing::uniform(rng, 0, 6.28));
    const auto r1 = solve_quadratic<double>(A, B, C);
    const auto r2 = solve_quadratic<double>(s * A, s * B, s * C);
    ASSERT_EQ(r1.roots.size(), r2.roots.size());
    for (const auto& r : r1.roots) {
      double best = 1e300;
      for (const auto& q : r2.roots) best = std::min(best, std::abs(r.tau - q.tau));
      EXPECT_LE(best, 1e-10 * (1 + std::abs(r.tau)));
    }
  }
}

TEST(SolveQuadratic, LongDoubleInstantiation) {
  const auto s = solve_quadratic<long double>(1.0L, -3.0L, 2.0L);
  ASSERT_EQ(s.roots.size(), 2u);
  EXPECT_NEAR(static_cast<double>(s.roots[0].tau.real() + s.roots[1].tau.real()), 3.0, 1e-15);
}

TEST(CharPoly, RootResidualOnRandomCouplings) {
  std::mt19937_64 rng(22);
  for (int n = 0; n < 10000; ++n) {
    const auto t = random_coupling(rng);
    for (const auto& r : solve_char_poly(t).roots) ASSERT_LE(root_residual(t, r.tau), 1e-12) << n;
  }
}

// Every interior local minimum of |p_T| on a dense grid sits next to a root
// reported by the solver.
TEST(CharPoly, DenseGridMinimaAreRoots) {
  std::mt19937_64 rng(23);
  constexpr int n = 400;
  constexpr double lo = -10.0, hi = 10.0, step = (hi - lo) / (n - 1);
  for (int trial = 0; trial < 8; ++trial) {
    const auto t = random_coupling(rng, 2.0);
    const auto roots = solve_char_poly(t).roots;
    std::vector<double> v(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i * n + j] = std::abs(char_poly(t, cplx(lo + i * step, lo + j * step)));
    for (int i = 1; i + 1 < n; ++i)
      for (int j = 1; j + 1 < n; ++j) {
        const double c = v[i * n + j];
        bool is_min = true;
        for (int di = -1; di <= 1 && is_min; ++di)
          for (int dj = -1; dj <= 1; ++dj)
            if ((di || dj) && v[(i + di) * n + j + dj] < c) {
              is_min = false;
              break;
            }
        if (!is_min) continue;
        const cplx z(lo + i * step, lo + j * step);
        double best = 1e300;
        for (const auto& r : roots) best = std::min(best, std::abs(r.tau - z));
        EXPECT_LE(best, 2.0 * step) << "trial " << trial << " minimum at " << z;
      }
  }
}

TEST(Classify, DeltaEigenvalues) {
  for (double a : {-0.5, -1.0, -2.0, -4.0}) {
    const auto rep = classify(delta_coupling(a));
    ASSERT_EQ(rep.eigenvalues.size(), 1u);
    EXPECT_NEAR(std::abs(rep.eigenvalues[0].z - cplx(-a * a / 4)), 0.0, 1e-12);
    EXPECT_TRUE(rep.singularities.empty());
  }
}

TEST(Classify, DeltaPrimeEigenvalues) {
  for (double d : {0.5, 1.0, 2.0, 4.0}) {
    const auto rep = classify(delta_prime_coupling(d));
    ASSERT_EQ(rep.eigenvalues.size(), 1u);
    EXPECT_NEAR(std::abs(rep.eigenvalues[0].z - cplx(-4 / (d * d))), 0.0, 1e-12);
  }
}

TEST(Classify, ImaginaryDeltaHasSingularity) {
  const auto rep = classify(delta_coupling(2.0 * I));
  EXPECT_TRUE(rep.eigenvalues.empty());
  ASSERT_EQ(rep.singularities.size(), 1u);
  EXPECT_EQ(rep.singularities[0].kind, SingularityKind::Nonzero);
  EXPECT_NEAR(rep.singularities[0].z, 1.0, 1e-12);

  const auto rep_d = classify(delta_prime_coupling(2.0 * I));
  ASSERT_EQ(rep_d.singularities.size(), 1u);
  EXPECT_NEAR(rep_d.singularities[0].z, 1.0, 1e-12); // 4 / |d|²
}

TEST(Classify, ComplexDeltaEigenvalue) {
  const cplx a{-2.0, 1.0};
  const auto rep = classify(delta_coupling(a));
  ASSERT_EQ(rep.eigenvalues.size(), 1u);
  EXPECT_NEAR(std::abs(rep.eigenvalues[0].z - (-a * a / 4.0)), 0.0, 1e-12);
  EXPECT_TRUE(rep.has_nonreal_eigenvalue());
}

TEST(Classify, FreeOperator) {
  const auto rep = classify({});
  EXPECT_TRUE(rep.eigenvalues.empty());
  EXPECT_TRUE(rep.singularities.empty()); // simple root at tau = 0 is not a singularity
  EXPECT_TRUE(rep.borderline);
  EXPECT_FALSE(rep.tolerance_binned);
}

TEST(Classify, WholePlaneSuppressesOtherLabels) {
  const auto rep = classify({0.0, 2.0 * I, 2.0 * I, 0.0});
  EXPECT_TRUE(rep.spectrum_is_whole_plane);
  EXPECT_TRUE(rep.eigenvalues.empty());
  EXPECT_TRUE(rep.singularities.empty());
  EXPECT_FALSE(rep.spectrum_is_real());
}

TEST(Classify, SingularitiesAtZeroAndInfinity) {
  const auto zero = classify({0.0, 2.0 * I, 2.0 * I, 1.0});
  ASSERT_EQ(zero.singularities.size(), 1u);
  EXPECT_EQ(zero.singularities[0].kind, SingularityKind::AtZero);

  const auto inf = classify({1.0, 2.0 * I, 2.0 * I, 0.0});
  ASSERT_EQ(inf.singularities.size(), 1u);
  EXPECT_EQ(inf.singularities[0].kind, SingularityKind::AtInfinity);
}

TEST(Classify, DefectiveDoubleRootIsExceptional) {
  const auto rep = classify({-1.0, I, I, 1.0});
  ASSERT_EQ(rep.eigenvalues.size(), 1u);
  EXPECT_EQ(rep.eigenvalues[0].multiplicity, 2);
  EXPECT_TRUE(rep.eigenvalues[0].defective);
  ASSERT_EQ(rep.exceptional_points.size(), 1u);
  EXPECT_NEAR(std::abs(rep.exceptional_points[0] - cplx(-1.0)), 0.0, 1e-12);
}

TEST(Classify, SemisimpleDoubleRootIsNotExceptional) {
  // Self-adjoint diag(-2, 2): boundary matrix vanishes at tau = i.
  const auto rep = classify({-2.0, 0.0, 0.0, 2.0});
  ASSERT_EQ(rep.eigenvalues.size(), 1u);
  EXPECT_EQ(rep.eigenvalues[0].multiplicity, 2);
  EXPECT_FALSE(rep.eigenvalues[0].defective);
  EXPECT_FALSE(rep.has_exceptional_point());
  EXPECT_EQ(pt_cell({-2.0, 0.0, 0.0, 2.0}), PtCell::ExceptionalPoint); // the (D, K) cell itself
}

TEST(Classify, ResonancesAreNotSpectrum) {
  const auto rep = classify(delta_coupling(2.0)); // root tau = -i
  EXPECT_TRUE(rep.eigenvalues.empty());
  EXPECT_TRUE(rep.singularities.empty());
  EXPECT_FALSE(rep.borderline);
}

TEST(PtTable, FixtureCells) {
  struct Case {
    CouplingMatrix t;
    PtCell cell;
  };
  const std::vector<Case> cases{
      {pt_coupling(-1, 2, 0, 1), PtCell::Similarity},           // D > 0, K > 0
      {pt_coupling(0, 1, 1, 0), PtCell::Similarity},            // D > 0, K = 0
      {pt_coupling(1, 1, 0, -1), PtCell::Similarity},           // D > 0, K < 0
      {pt_coupling(-2, 0, 0, 2), PtCell::ExceptionalPoint},     // D = 0, K > 0
      {pt_coupling(0, 2, 2, 0), PtCell::WholePlane},            // D = 0, K = 0, a = d = 0
      {pt_coupling(0, 2, 2, 1), PtCell::SingularityAtZero},     // D = 0, K = 0, a = 0
      {pt_coupling(1, 2, 2, 0), PtCell::SingularityAtInfinity}, // D = 0, K = 0, d = 0
      {pt_coupling(2, 0, 0, -2), PtCell::Similarity},           // D = 0, K < 0
      {pt_coupling(5, 4, 3, -1), PtCell::ComplexPair},          // D < 0, K > 0
      {pt_coupling(-5, 3, 3, 1), PtCell::NonzeroSingularity},   // D < 0, K = 0
      {pt_coupling(-1, 2, 3, 1), PtCell::Similarity},           // D < 0, K < 0
  };
  for (const auto& c : cases) EXPECT_EQ(pt_cell(c.t), c.cell) << to_string(c.cell);
}

TEST(PtTable, InvariantValues) {
  // Independent high-precision evaluation of (D, K).
  const auto inv = pt_invariants(pt_coupling(5, 4, 3, -1));
  EXPECT_EQ(inv.D, -71.0);
  EXPECT_EQ(inv.K, 3.0);
  const auto inv2 = pt_invariants(pt_coupling(-5, 3, 3, 1));
  EXPECT_EQ(inv2.D, -80.0);
  EXPECT_EQ(inv2.K, 0.0);
  EXPECT_THROW(pt_invariants(delta_coupling(2.0 * I)), not_pt_symmetric);
}

// Away from the sign-tie bands the table agrees with the root classifier.
TEST(PtTable, AgreesWithRootClassification) {
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int n = 0; n < 20000; ++n) {
    const auto t = random_pt(rng);
    const auto inv = pt_invariants(t);
    if (std::abs(inv.D) < 1e-6 || std::abs(inv.K) < 1e-6) continue;
    const auto rep = classify(t);
    switch (pt_cell(t)) {
    case PtCell::Similarity:
      EXPECT_TRUE(rep.spectrum_is_real());
      EXPECT_FALSE(rep.has_singularity());
      break;
    case PtCell::ComplexPair:
      EXPECT_TRUE(rep.has_nonreal_eigenvalue());
      EXPECT_EQ(rep.eigenvalues.size(), 2u);
      break;
    default: ADD_FAILURE() << "generic sign produced a degenerate cell";
    }
    ++checked;
  }
  EXPECT_GT(checked, 10000);
}

// det T = 4 with a d < 0 puts (D, K) in the (-, 0) cell; the roots are the
// real pair tau = ±sqrt(-a/d).
TEST(PtTable, NonzeroSingularityFamily) {
  std::mt19937_64 rng(25);
  for (int n = 0; n < 200; ++n) {
    const double a = zrp::testing::uniform(rng, 0.5, 5);
    const double d = -zrp::testing::uniform(rng, 0.5, 5);
    const double x = zrp::testing::uniform(rng, 0.5, 5);
    const auto t = pt_coupling(a, x, (4.0 - a * d) / x, d);
    EXPECT_EQ(pt_cell(t), PtCell::NonzeroSingularity);
    const auto rep = classify(t);
    ASSERT_FALSE(rep.singularities.empty());
    EXPECT_NEAR(rep.singularities[0].z, -a / d, 1e-9 * (1 - a / d));
  }
}
