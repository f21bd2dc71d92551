#pragma once

// Boundary triple of the operator realization A_T: the domain of A_T is
//   { f in W²₂(R \ {0}) : T Γ₀ f = Γ₁ f },
// with Γ₀, Γ₁ built from the four one-sided limits of f and f'.

#include <array>
#include <cmath>

#include "coupling.hpp"
#include "exp_sum.hpp"

namespace zrp {

using Vec2 = std::array<cplx, 2>;

/// p_T(tau) = 2 d tau² + i (det T - 4) tau + 2 a.
inline cplx char_poly(const CouplingMatrix& t, cplx tau) {
  return 2.0 * t.d * tau * tau + I * (t.det() - 4.0) * tau + 2.0 * t.a;
}

/// Magnitude scale of the individual terms of p_T(tau); used for relative
/// zero tests.
inline double char_poly_scale(const CouplingMatrix& t, cplx tau) {
  const double m = std::abs(tau);
  return 1.0 + 2.0 * std::abs(t.d) * m * m + std::abs(t.det() - 4.0) * m + 2.0 * std::abs(t.a);
}

inline Vec2 gamma0(const BoundaryTraces& tr) {
  return {0.5 * (tr.f_plus + tr.f_minus), 0.5 * (-tr.df_plus - tr.df_minus)};
}

inline Vec2 gamma1(const BoundaryTraces& tr) {
  return {tr.df_plus - tr.df_minus, tr.f_plus - tr.f_minus};
}

/// T Γ₀ - Γ₁ as a vector.
inline Vec2 boundary_defect(const CouplingMatrix& t, const BoundaryTraces& tr) {
  const Vec2 g0 = gamma0(tr);
  const Vec2 g1 = gamma1(tr);
  return {t.a * g0[0] + t.b * g0[1] - g1[0], t.c * g0[0] + t.d * g0[1] - g1[1]};
}

/// ‖T Γ₀ f - Γ₁ f‖₂; zero iff the traces satisfy the domain condition of A_T.
inline double boundary_residual(const CouplingMatrix& t, const BoundaryTraces& tr) {
  const Vec2 r = boundary_defect(t, tr);
  return std::sqrt(std::norm(r[0]) + std::norm(r[1]));
}

/// Coefficient matrix of T Γ₀ - Γ₁ on span{h_{1tau}, h_{2tau}}:
///   [ a - 2 i tau,   i b tau     ]
///   [ c,             i d tau + 2 ]
/// Its determinant is p_T(tau).
inline std::array<Vec2, 2> boundary_matrix(const CouplingMatrix& t, cplx tau) {
  return {Vec2{t.a - 2.0 * I * tau, I * t.b * tau}, Vec2{t.c, I * t.d * tau + 2.0}};
}

} // namespace zrp
