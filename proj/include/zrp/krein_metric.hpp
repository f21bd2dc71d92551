#pragma once

// Fundamental symmetries on L2(R) and the Krein-space / Hilbert-space metrics
// of PT-symmetric A_T.
//
//   P f(x) = f(-x)          R f(x) = sign(x) f(x)        (PR = -RP)
//   J_alpha = a1 P + a2 R + a3 iPR,   a1² + a2² + a3² = 1
//   P_phi   = P e^{i phi R} = cos(phi) P + sin(phi) iPR
//   e^Q     = cosh(chi) I + sinh(chi) iR P_phi
//
// A PT-symmetric A_T is self-adjoint in the Krein space with metric P_phi,
// where phi solves 2(b - c) cos(phi) = i (4 + det T) sin(phi). When
// D = (4 - det T)² + 16 a d > 0 it is self-adjoint in the Hilbert space with
// inner product (e^Q ·, ·) for the chi solving
//   x + y = -tanh(chi) [ (det T + 4) cos(phi) / 2 + (x - y) sin(phi) ],
// b = ix, c = iy.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "coupling.hpp"
#include "errors.hpp"
#include "exp_sum.hpp"
#include "spectral_classifier.hpp"

namespace zrp {

// --- operators on exponential sums ----------------------------------------

inline TwoSidedExpSum apply_parity(const TwoSidedExpSum& f) {
  TwoSidedExpSum out;
  for (const auto& t : f.left) out.right.push_back({t.coef, -t.rate});
  for (const auto& t : f.right) out.left.push_back({t.coef, -t.rate});
  return out;
}

inline TwoSidedExpSum apply_sign(const TwoSidedExpSum& f) {
  TwoSidedExpSum out = f;
  for (auto& t : out.left) t.coef = -t.coef;
  return out;
}

/// iPR
inline TwoSidedExpSum apply_ipr(const TwoSidedExpSum& f) { return I * apply_parity(apply_sign(f)); }

/// Complex conjugation (antilinear).
inline TwoSidedExpSum apply_conjugation(const TwoSidedExpSum& f) {
  TwoSidedExpSum out = f;
  for (auto& t : out.right) t = {std::conj(t.coef), std::conj(t.rate)};
  for (auto& t : out.left) t = {std::conj(t.coef), std::conj(t.rate)};
  return out;
}

inline TwoSidedExpSum apply_pt(const TwoSidedExpSum& f) { return apply_parity(apply_conjugation(f)); }

class FundamentalSymmetry {
public:
  enum class Kind { P, R, iPR, JAlpha, PPhi };

  static FundamentalSymmetry parity() { return {Kind::P, {1.0, 0.0, 0.0}, 0.0}; }
  static FundamentalSymmetry sign() { return {Kind::R, {0.0, 1.0, 0.0}, 0.0}; }
  static FundamentalSymmetry ipr() { return {Kind::iPR, {0.0, 0.0, 1.0}, 0.0}; }

  static FundamentalSymmetry j_alpha(double a1, double a2, double a3) {
    if (std::abs(a1 * a1 + a2 * a2 + a3 * a3 - 1.0) > 1e-12)
      throw std::invalid_argument("J_alpha requires a1² + a2² + a3² = 1");
    return {Kind::JAlpha, {a1, a2, a3}, 0.0};
  }

  static FundamentalSymmetry p_phi(double phi) {
    return {Kind::PPhi, {std::cos(phi), 0.0, std::sin(phi)}, phi};
  }

  Kind kind() const { return kind_; }
  /// Coordinates in the basis (P, R, iPR).
  const std::array<double, 3>& alpha() const { return alpha_; }
  double phi() const { return phi_; }

  /// PT-symmetric members of the J_alpha family are exactly those with a2 = 0.
  bool pt_symmetric() const { return alpha_[1] == 0.0; }

  TwoSidedExpSum apply(const TwoSidedExpSum& f) const {
    TwoSidedExpSum out;
    if (alpha_[0] != 0.0) out += alpha_[0] * apply_parity(f);
    if (alpha_[1] != 0.0) out += alpha_[1] * apply_sign(f);
    if (alpha_[2] != 0.0) out += alpha_[2] * apply_ipr(f);
    return out.simplified();
  }

private:
  FundamentalSymmetry(Kind k, std::array<double, 3> a, double phi) : kind_(k), alpha_(a), phi_(phi) {}

  Kind kind_;
  std::array<double, 3> alpha_;
  double phi_;
};

/// e^Q = cosh(chi) I + sinh(chi) iR P_phi.
inline TwoSidedExpSum apply_metric_operator(double phi, double chi, const TwoSidedExpSum& f) {
  const TwoSidedExpSum rp = I * apply_sign(FundamentalSymmetry::p_phi(phi).apply(f));
  return (std::cosh(chi) * f + std::sinh(chi) * rp).simplified();
}

// --- metric parameters ----------------------------------------------------

struct PhiSolution {
  double phi;  // in [0, pi)
  bool family; // both coefficients vanish: every phi solves the relation
};

struct MetricSpec {
  double phi = 0.0;
  bool phi_family = false;
  std::optional<double> chi; // nullopt: no Hilbert metric of the e^Q form
};

namespace detail {

struct PtParams {
  double x, y, det;
};

inline PtParams pt_params(const CouplingMatrix& t) {
  if (!has_pt(symmetry_class(t))) throw not_pt_symmetric();
  return {t.b.imag(), t.c.imag(), t.det().real()};
}

} // namespace detail

/// |2(b - c) cos(phi) - i (4 + det T) sin(phi)|
inline double phi_residual(const CouplingMatrix& t, double phi) {
  return std::abs(2.0 * (t.b - t.c) * std::cos(phi) - I * (4.0 + t.det()) * std::sin(phi));
}

inline PhiSolution solve_phi(const CouplingMatrix& t) {
  const auto p = detail::pt_params(t);
  const double s = 2.0 * (p.x - p.y);
  const double w = 4.0 + p.det;
  if (std::abs(s) <= 1e-12 && std::abs(w) <= 1e-12) return {0.0, true};
  // phi and phi + pi give the same metric up to sign.
  double phi = std::atan2(s, w);
  if (phi < 0.0) phi += std::numbers::pi;
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  return {phi, false};
}

inline std::optional<double> solve_chi(const CouplingMatrix& t, double phi) {
  const auto p = detail::pt_params(t);
  const double w = 0.5 * (p.det + 4.0) * std::cos(phi) + (p.x - p.y) * std::sin(phi);
  const double xy = p.x + p.y;
  if (!(std::abs(xy) < std::abs(w))) return std::nullopt;
  return std::atanh(-xy / w);
}

inline MetricSpec krein_metric(const CouplingMatrix& t) {
  const PhiSolution ps = solve_phi(t);
  return {ps.phi, ps.family, solve_chi(t, ps.phi)};
}

using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline Mat2 to_mat(const CouplingMatrix& t) { return {{{t.a, t.b}, {t.c, t.d}}}; }

inline Mat2 mul(const Mat2& x, const Mat2& y) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

/// Max-entry modulus of
///   cosh(chi)(T - T*) + sinh(chi)( (i/2) cos(phi) [T* s1 T + 4 s1] + sin(phi) [s3 T - T* s3] )
/// with T* = conj(T)^t. Vanishes iff e^Q maps D(A_T) into D(A_T^*).
inline double metric_identity_residual(const CouplingMatrix& t, double phi, double chi) {
  const Mat2 T = to_mat(t);
  const Mat2 Ts = to_mat(t.adjoint());
  const Mat2 s1{{{0.0, 1.0}, {1.0, 0.0}}};
  const Mat2 s3{{{1.0, 0.0}, {0.0, -1.0}}};
  const Mat2 ts1t = mul(mul(Ts, s1), T);
  const Mat2 s3t = mul(s3, T);
  const Mat2 ts3 = mul(Ts, s3);
  const double ch = std::cosh(chi), sh = std::sinh(chi);
  const double cp = std::cos(phi), sp = std::sin(phi);
  double mx = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx e = ch * (T[i][j] - Ts[i][j]) +
                     sh * (0.5 * I * cp * (ts1t[i][j] + 4.0 * s1[i][j]) + sp * (s3t[i][j] - ts3[i][j]));
      mx = std::max(mx, std::abs(e));
    }
  return mx;
}

// --- similarity through the Krein-space route ------------------------------

struct KreinSimilarity {
  enum class Verdict { Similar, NotSimilar, Undecided };

  Verdict verdict = Verdict::Undecided;
  /// Metric data; chi is set only for the constructive branch.
  std::optional<MetricSpec> metric;
  std::string reason;

  bool constructive() const { return metric && metric->chi.has_value(); }
};

inline std::string_view to_string(KreinSimilarity::Verdict v) {
  switch (v) {
  case KreinSimilarity::Verdict::Similar: return "similar";
  case KreinSimilarity::Verdict::NotSimilar: return "not-similar";
  case KreinSimilarity::Verdict::Undecided: return "undecided";
  }
  return "undecided";
}

inline KreinSimilarity similarity_via_krein(const CouplingMatrix& t) {
  using V = KreinSimilarity::Verdict;
  const PtCell cell = pt_cell(t); // throws for non-PT input
  const PhiSolution ps = solve_phi(t);

  if (is_self_adjoint(t)) return {V::Similar, MetricSpec{ps.phi, ps.family, 0.0}, "self-adjoint (e^Q = I)"};

  switch (cell) {
  case PtCell::Similarity: {
    if (tolerant_sign(pt_invariants(t).D) > 0) {
      const auto chi = solve_chi(t, ps.phi);
      if (!chi) throw numeric_error("no chi although D > 0");
      return {V::Similar, MetricSpec{ps.phi, ps.family, chi}, "D > 0: metric e^Q constructed"};
    }
    return {V::Similar, MetricSpec{ps.phi, ps.family, std::nullopt},
            "roots of p_T in C_-: M± bounded, Krein-self-adjoint"};
  }
  case PtCell::ExceptionalPoint:
  case PtCell::SingularityAtZero:
  case PtCell::SingularityAtInfinity:
  case PtCell::NonzeroSingularity:
  case PtCell::ComplexPair:
  case PtCell::WholePlane:
    return {V::NotSimilar, std::nullopt, std::string(to_string(cell))};
  }
  return {};
}

/// Whether A_T admits a self-adjoint interpretation in some Krein space.
enum class KreinRepresentability { Representable, NotRepresentable, Unknown };

inline std::string_view to_string(KreinRepresentability k) {
  switch (k) {
  case KreinRepresentability::Representable: return "representable";
  case KreinRepresentability::NotRepresentable: return "not-representable";
  case KreinRepresentability::Unknown: return "unknown";
  }
  return "unknown";
}

/// PT-symmetric and self-adjoint couplings are representable (metric P_phi).
/// Otherwise an eigenvalue set not closed under conjugation rules it out;
/// everything else is left open.
inline KreinRepresentability krein_representability(const CouplingMatrix& t) {
  const auto sym = symmetry_class(t);
  if (sym != SymmetryClass::Neither) return KreinRepresentability::Representable;
  const SpectralReport rep = classify(t);
  if (rep.spectrum_is_whole_plane) return KreinRepresentability::Unknown;
  for (const auto& e : rep.eigenvalues) {
    const bool has_partner = std::any_of(rep.eigenvalues.begin(), rep.eigenvalues.end(), [&](const Eigenvalue& o) {
      return std::abs(o.z - std::conj(e.z)) <= 1e-10 * (1.0 + std::abs(e.z));
    });
    if (!has_partner) return KreinRepresentability::NotRepresentable;
  }
  return KreinRepresentability::Unknown;
}

} // namespace zrp
