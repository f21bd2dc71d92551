#pragma once

// The 2x2 coupling matrix T = (a b; c d) of a general zero-range potential
//   a<δ,·>δ + b<δ',·>δ + c<δ,·>δ' + d<δ',·>δ'
// and its symmetry classification.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string_view>

namespace zrp {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Absolute tolerance for "entry is real" / "entry is imaginary" tests.
inline constexpr double entry_tol = 1e-12;

inline bool is_real(cplx z) { return std::abs(z.imag()) <= entry_tol; }
inline bool is_imaginary(cplx z) { return std::abs(z.real()) <= entry_tol; }

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

struct CouplingMatrix {
  cplx a{}, b{}, c{}, d{};

  CouplingMatrix() = default;
  CouplingMatrix(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    if (!is_finite(a) || !is_finite(b) || !is_finite(c) || !is_finite(d))
      throw std::invalid_argument("coupling matrix entries must be finite");
  }

  cplx det() const { return a * d - b * c; }

  /// conj(T)^t; A_T^* = A_{conj(T)^t}.
  CouplingMatrix adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }

  bool operator==(const CouplingMatrix&) const = default;
};

/// Pure δ-potential a<δ,·>δ.
inline CouplingMatrix delta_coupling(cplx a) { return {a, 0.0, 0.0, 0.0}; }

/// Pure δ'-potential d<δ',·>δ'.
inline CouplingMatrix delta_prime_coupling(cplx d) { return {0.0, 0.0, 0.0, d}; }

/// PT family b = ix, c = iy with real a, d.
inline CouplingMatrix pt_coupling(double a, double x, double y, double d) {
  return {a, cplx(0.0, x), cplx(0.0, y), d};
}

enum class SymmetryClass { SelfAdjoint, PTSymmetric, Both, Neither };

inline bool is_self_adjoint(const CouplingMatrix& t) {
  return is_real(t.a) && is_real(t.d) && std::abs(t.c - std::conj(t.b)) <= entry_tol;
}

inline bool is_pt_symmetric(const CouplingMatrix& t) {
  return is_real(t.a) && is_real(t.d) && is_imaginary(t.b) && is_imaginary(t.c);
}

inline SymmetryClass symmetry_class(const CouplingMatrix& t) {
  const bool sa = is_self_adjoint(t);
  const bool pt = is_pt_symmetric(t);
  if (sa && pt) return SymmetryClass::Both;
  if (sa) return SymmetryClass::SelfAdjoint;
  if (pt) return SymmetryClass::PTSymmetric;
  return SymmetryClass::Neither;
}

inline bool has_pt(SymmetryClass s) {
  return s == SymmetryClass::PTSymmetric || s == SymmetryClass::Both;
}

inline bool has_self_adjoint(SymmetryClass s) {
  return s == SymmetryClass::SelfAdjoint || s == SymmetryClass::Both;
}

inline std::string_view to_string(SymmetryClass s) {
  switch (s) {
  case SymmetryClass::SelfAdjoint: return "self-adjoint";
  case SymmetryClass::PTSymmetric: return "pt-symmetric";
  case SymmetryClass::Both: return "self-adjoint+pt-symmetric";
  case SymmetryClass::Neither: return "neither";
  }
  return "neither";
}

} // namespace zrp
