#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <zrp/fd_oracle.hpp>

using namespace zrp;
using namespace zrp::fd;

TEST(Discretization, Validation) {
  EXPECT_THROW(build_matrix({}, {30.0, 8}), std::invalid_argument);
  EXPECT_THROW(build_matrix({}, {0.0, 100}), std::invalid_argument);
  EXPECT_THROW(build_matrix({}, {-1.0, 100}), std::invalid_argument);
  const auto p = build_matrix({}, {30.0, 16});
  EXPECT_EQ(p.size(), 34);
}

TEST(Discretization, FreeOperatorIsTheBoxLaplacian) {
  const DiscretizationConfig cfg{30.0, 400};
  const auto p = build_matrix({}, cfg);
  const double e0 = free_box_ground_state(cfg);
  EXPECT_NEAR(e0, std::pow(std::numbers::pi / (2 * cfg.L), 2), 1e-6);
  const auto z = discrete_eigenvalues(p, 1, {0.0, 2.0 * e0, -0.5 * e0, 0.5 * e0});
  ASSERT_EQ(z.size(), 1u);
  EXPECT_NEAR(std::abs(z[0] - e0), 0.0, 1e-10 * e0 + 1e-14);
}

TEST(Discretization, FreeOperatorHasNoNegativeEigenvalues) {
  const auto p = build_matrix({}, {});
  EXPECT_TRUE(discrete_eigenvalues(p, -1, {-10.0, -1e-2, -5.0, 5.0}).empty());
}

TEST(Discretization, SelfAdjointSpectrumIsReal) {
  const auto p = build_matrix({-3.0, cplx(1, 1), cplx(1, -1), 0.0}, {30.0, 600});
  const auto z = discrete_eigenvalues(p, -1, {-3.0, 0.5, -1.0, 1.0});
  ASSERT_FALSE(z.empty());
  for (cplx v : z) EXPECT_LE(std::abs(v.imag()), 1e-8);
}

TEST(Discretization, DeltaBoundState) {
  const auto p = build_matrix(delta_coupling(-2.0), {});
  const auto z = discrete_eigenvalues(p, -1, window_around(-1.0));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_LE(std::abs(z[0] + 1.0), 2e-3);
}

TEST(Discretization, ComplexPairMatchesRoots) {
  const CouplingMatrix t = pt_coupling(5, 4, 3, -1);
  const auto p = build_matrix(t, {});
  for (const auto& e : classify(t).eigenvalues) {
    const auto z = discrete_eigenvalues(p, -1, window_around(e.z));
    ASSERT_EQ(z.size(), 1u);
    EXPECT_LE(std::abs(z[0] - e.z), 5e-3);
  }
}

TEST(Discretization, WindowCountMatchesClosedForm) {
  // Two real eigenvalues; the window [-9, -0.1] holds both.
  const CouplingMatrix t{-2.0, I, -I, 1.0};
  const auto z = discrete_eigenvalues(build_matrix(t, {}), -1, {-9.0, -0.1, -1.0, 1.0});
  EXPECT_EQ(z.size(), classify(t).eigenvalues.size());
  for (cplx v : z) EXPECT_LE(std::abs(v.imag()), 1e-6);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_LT(std::abs(z[0]), std::abs(z[1]));
}

TEST(Compare, SecondOrderConvergence) {
  const auto rep = compare(delta_prime_coupling(1.0));
  ASSERT_EQ(rep.records.size(), 1u);
  const auto& r = rep.records[0];
  EXPECT_TRUE(r.agree);
  EXPECT_LE(r.error, 2e-3);
  EXPECT_LE(r.error_fine, 5e-4);
  EXPECT_GE(r.improvement(), 3.5);
  EXPECT_LE(r.improvement(), 4.5);
}

TEST(Compare, ShallowStatesAreSkipped) {
  // a = -0.5: tau = 0.25 i decays too slowly for L = 30 to be negligible.
  const auto rep = compare(delta_coupling(-0.5));
  EXPECT_TRUE(rep.records.empty());
  ASSERT_EQ(rep.skipped.size(), 1u);
}

TEST(Compare, DisagreementIsFlagged) {
  // Reference value off by 5e-2 from the true bound state at -1.
  const Pencil coarse = build_matrix(delta_coupling(-2.0), {30.0, 1000});
  const Pencil fine = build_matrix(delta_coupling(-2.0), {30.0, 2000});
  const auto good = compare_at(coarse, fine, -1.0);
  EXPECT_TRUE(good.agree);
  const auto bad = compare_at(coarse, fine, -1.05);
  ASSERT_TRUE(bad.fd.has_value());
  EXPECT_FALSE(bad.agree);
  EXPECT_NEAR(bad.error, 0.05, 1e-2);
}
