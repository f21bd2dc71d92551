#pragma once

// Spectral classification of A_T from the roots of the characteristic
// polynomial p_T(tau) = 2 d tau² + i (det T - 4) tau + 2 a:
//
//   root with Im tau > 0            -> eigenvalue z = tau²
//   real root tau != 0              -> spectral singularity z = tau² > 0
//   double root tau = 0             -> spectral singularity at z = 0
//   no roots (p_T constant != 0)    -> spectral singularity at z = infinity
//   p_T identically zero            -> sigma(A_T) = C
//   defective double root in C_+    -> exceptional point
//
// For PT-symmetric couplings the same information is encoded by the signs of
// D = (4 - det T)² + 16 a d and K = (4 - det T) d; pt_cell() implements that
// decision table independently of the root solver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "coupling.hpp"
#include "errors.hpp"
#include "exp_sum.hpp"
#include "operator_model.hpp"

namespace zrp {

template <class Real>
struct QuadraticRoot {
  std::complex<Real> tau;
  int multiplicity;
};

template <class Real>
struct QuadraticSolution {
  std::vector<QuadraticRoot<Real>> roots;
  bool identically_zero = false;
  int degree = 0;
};

/// Roots of A t² + B t + C with exact degree tests on A and B.
///
/// The larger-magnitude root q/A is formed first with the sign of the square
/// root chosen to avoid cancellation in B ± sqrt(disc); the second root is
/// C/q. A double root is declared when |disc| <= rel_tol * max(floor,
/// |B|², |4AC|).
template <class Real>
QuadraticSolution<Real> solve_quadratic(std::complex<Real> A, std::complex<Real> B, std::complex<Real> C,
                                        Real rel_tol = Real(1e-12), Real floor = Real(0)) {
  using C_t = std::complex<Real>;
  QuadraticSolution<Real> out;
  if (A == C_t{}) {
    if (B != C_t{}) {
      out.degree = 1;
      out.roots.push_back({-C / B, 1});
    } else {
      out.identically_zero = (C == C_t{});
    }
    return out;
  }
  out.degree = 2;
  const C_t disc = B * B - Real(4) * A * C;
  const Real thresh = rel_tol * std::max({floor, std::norm(B), Real(4) * std::abs(A * C)});
  if (std::abs(disc) <= thresh) {
    out.roots.push_back({-B / (Real(2) * A), 2});
    return out;
  }
  const C_t sq = std::sqrt(disc);
  const Real sgn = (std::conj(B) * sq).real() >= Real(0) ? Real(1) : Real(-1);
  const C_t q = -(B + sgn * sq) / Real(2);
  out.roots.push_back({q / A, 1});
  out.roots.push_back({C / q, 1});
  return out;
}

using RootSet = QuadraticSolution<double>;

/// Roots of p_T. det T = 4 is tested with a relative tolerance so that
/// couplings such as b = c = 2i (det T = -bc = 4) are recognised.
inline RootSet solve_char_poly(const CouplingMatrix& t) {
  cplx lin = t.det() - 4.0;
  if (std::abs(lin) <= 1e-12 * (4.0 + std::abs(t.a * t.d) + std::abs(t.b * t.c))) lin = 0.0;
  return solve_quadratic<double>(2.0 * t.d, I * lin, 2.0 * t.a, 1e-12, 1.0);
}

inline double root_tolerance(cplx tau) { return 1e-10 * (1.0 + std::abs(tau)); }

// ---------------------------------------------------------------------------

struct Eigenvalue {
  cplx z;
  cplx tau;
  int multiplicity;
  /// Double root whose 2x2 boundary system has rank one (a Jordan block).
  bool defective;
};

enum class SingularityKind { Nonzero, AtZero, AtInfinity };

struct Singularity {
  SingularityKind kind;
  double z; // tau² for Nonzero, 0 for AtZero, +inf for AtInfinity
};

inline std::string_view to_string(SingularityKind k) {
  switch (k) {
  case SingularityKind::Nonzero: return "nonzero";
  case SingularityKind::AtZero: return "zero";
  case SingularityKind::AtInfinity: return "infinity";
  }
  return "nonzero";
}

struct SpectralReport {
  static constexpr std::string_view continuous_spectrum = "[0,inf)";

  SymmetryClass symmetry = SymmetryClass::Neither;
  RootSet roots;
  std::vector<Eigenvalue> eigenvalues;
  std::vector<Singularity> singularities;
  std::vector<cplx> exceptional_points;
  bool spectrum_is_whole_plane = false;
  /// Some root sits within tolerance of the real axis or the origin.
  bool borderline = false;
  /// Some root was binned by tolerance rather than lying exactly on R or at 0.
  bool tolerance_binned = false;

  bool has_nonreal_eigenvalue() const {
    return std::any_of(eigenvalues.begin(), eigenvalues.end(),
                       [](const Eigenvalue& e) { return std::abs(e.z.imag()) > 1e-10 * (1.0 + std::abs(e.z)); });
  }
  bool spectrum_is_real() const { return !spectrum_is_whole_plane && !has_nonreal_eigenvalue(); }
  bool has_singularity() const { return !singularities.empty(); }
  bool has_exceptional_point() const { return !exceptional_points.empty(); }
};

/// Rank of the boundary system at tau is one (as opposed to zero).
inline bool boundary_matrix_rank_one(const CouplingMatrix& t, cplx tau) {
  const auto m = boundary_matrix(t, tau);
  const double scale = 3.0 + std::abs(t.a) + std::abs(t.c) + (2.0 + std::abs(t.b) + std::abs(t.d)) * std::abs(tau);
  double mx = 0.0;
  for (const auto& row : m)
    for (const auto& e : row) mx = std::max(mx, std::abs(e));
  return mx > 1e-6 * scale;
}

inline SpectralReport classify(const CouplingMatrix& t) {
  SpectralReport rep;
  rep.symmetry = symmetry_class(t);
  rep.roots = solve_char_poly(t);

  if (rep.roots.identically_zero) {
    // sigma(A_T) = C; every other label is suppressed.
    rep.spectrum_is_whole_plane = true;
    return rep;
  }
  if (rep.roots.degree == 0) {
    rep.singularities.push_back({SingularityKind::AtInfinity, std::numeric_limits<double>::infinity()});
    return rep;
  }

  for (const auto& r : rep.roots.roots) {
    const cplx tau = r.tau;
    const double tol = root_tolerance(tau);
    if (tau.imag() > tol) {
      const bool defective = r.multiplicity == 2 && boundary_matrix_rank_one(t, tau);
      rep.eigenvalues.push_back({tau * tau, tau, r.multiplicity, defective});
      if (defective) rep.exceptional_points.push_back(tau * tau);
      continue;
    }
    if (tau.imag() < -tol) continue; // resonance in C_-, not spectrum

    rep.borderline = true;
    if (std::abs(tau) > tol) {
      if (tau.imag() != 0.0) rep.tolerance_binned = true;
      rep.singularities.push_back({SingularityKind::Nonzero, tau.real() * tau.real()});
    } else {
      if (tau != cplx{}) rep.tolerance_binned = true;
      if (r.multiplicity == 2) rep.singularities.push_back({SingularityKind::AtZero, 0.0});
      // A simple root at 0 is neither an eigenvalue nor a singularity.
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// PT-symmetric decision table.

struct PtInvariants {
  double D;
  double K;
};

inline PtInvariants pt_invariants(const CouplingMatrix& t) {
  if (!has_pt(symmetry_class(t))) throw not_pt_symmetric();
  const double det = t.det().real();
  const double a = t.a.real(), d = t.d.real();
  const double D = (4.0 - det) * (4.0 - det) + 16.0 * a * d;
  // Same invariant through det T + 4 and b c.
  const double D_alt = (4.0 + det) * (4.0 + det) + 16.0 * (t.b * t.c).real();
  const double scale = 1.0 + (4.0 + std::abs(det)) * (4.0 + std::abs(det)) + 16.0 * (std::abs(a * d) + std::abs(t.b * t.c));
  if (std::abs(D - D_alt) > 1e-10 * scale)
    throw numeric_error("inconsistent PT invariant D");
  return {D, (4.0 - det) * d};
}

enum class PtCell {
  Similarity,
  ExceptionalPoint,
  SingularityAtZero,
  SingularityAtInfinity,
  WholePlane,
  ComplexPair,
  NonzeroSingularity,
};

inline std::string_view to_string(PtCell c) {
  switch (c) {
  case PtCell::Similarity: return "similarity";
  case PtCell::ExceptionalPoint: return "exceptional point";
  case PtCell::SingularityAtZero: return "spectral singularity at 0";
  case PtCell::SingularityAtInfinity: return "spectral singularity at infinity";
  case PtCell::WholePlane: return "spectrum is C";
  case PtCell::ComplexPair: return "pair of complex eigenvalues";
  case PtCell::NonzeroSingularity: return "nonzero spectral singularity";
  }
  return "similarity";
}

inline int tolerant_sign(double v) {
  const double tol = 1e-12 * (1.0 + std::abs(v));
  return v > tol ? 1 : (v < -tol ? -1 : 0);
}

/// Both D and K sit inside their zero band without being exactly zero.
inline bool pt_sign_tie(const PtInvariants& inv) {
  return (tolerant_sign(inv.D) == 0 && inv.D != 0.0) || (tolerant_sign(inv.K) == 0 && inv.K != 0.0);
}

inline PtCell pt_cell(const CouplingMatrix& t) {
  const PtInvariants inv = pt_invariants(t);
  const int sD = tolerant_sign(inv.D);
  const int sK = tolerant_sign(inv.K);
  if (sD > 0) return PtCell::Similarity;
  if (sK < 0) return PtCell::Similarity;
  if (sD == 0) {
    if (sK > 0) return PtCell::ExceptionalPoint;
    // D = K = 0 forces det T = 4 together with a = 0 or d = 0.
    const bool a0 = std::abs(t.a) <= entry_tol;
    const bool d0 = std::abs(t.d) <= entry_tol;
    if (a0 && d0) return PtCell::WholePlane;
    if (d0) return PtCell::SingularityAtInfinity;
    return PtCell::SingularityAtZero;
  }
  return sK > 0 ? PtCell::ComplexPair : PtCell::NonzeroSingularity;
}

// ---------------------------------------------------------------------------

/// Eigenfunction c1 h_{1tau} + c2 h_{2tau} for a root tau in C_+, normalised to
/// max(|c1|, |c2|) = 1.
inline TwoSidedExpSum eigenfunction(const CouplingMatrix& t, cplx tau) {
  if (!(tau.imag() > 0.0)) throw not_decaying("eigenfunction requires Im tau > 0");
  if (std::abs(char_poly(t, tau)) > 1e-10 * char_poly_scale(t, tau))
    throw not_a_root("tau is not a root of the characteristic polynomial");

  const auto m = boundary_matrix(t, tau);
  const auto row_norm = [](const Vec2& r) { return std::norm(r[0]) + std::norm(r[1]); };
  const Vec2& row = row_norm(m[0]) >= row_norm(m[1]) ? m[0] : m[1];
  cplx c1 = 1.0, c2 = 0.0;
  if (row_norm(row) > 0.0) {
    c1 = row[1];
    c2 = -row[0];
  }
  const double s = std::max(std::abs(c1), std::abs(c2));
  c1 /= s;
  c2 /= s;
  return c1 * h1(tau) + c2 * h2(tau);
}

} // namespace zrp
