#pragma once

// Closed-form resolvents of A_T and the boundedness machinery behind the
// similarity criteria.
//
// For z = tau², Im tau > 0:
//   (A_0 - z)^{-1} g (x) = (i / 2tau) ∫ exp(i tau |x - s|) g(s) ds,
//   (A_T - z)^{-1} g     = (A_0 - z)^{-1} g + c1 h_{1tau} + c2 h_{2tau},
// with (c1, c2) fixed by T Γ₀ f = Γ₁ f. Both pieces stay exponential sums.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "coupling.hpp"
#include "errors.hpp"
#include "exp_sum.hpp"
#include "krein_metric.hpp"
#include "operator_model.hpp"
#include "spectral_classifier.hpp"

namespace zrp {

inline TwoSidedExpSum free_resolvent(const TwoSidedExpSum& g, cplx tau) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("free_resolvent requires Im tau > 0");
  if (!g.square_integrable()) throw std::invalid_argument("free_resolvent requires a square-integrable input");

  const cplx k = i_times(tau); // Re k < 0
  const cplx k2 = k * k;
  const cplx alpha = -1.0 / (2.0 * k); // = i / (2 tau)
  const double pole_tol = 1e-12 * (1.0 + std::abs(k));
  const auto check = [&](cplx rate) {
    if (std::abs(rate - k) <= pole_tol || std::abs(rate + k) <= pole_tol)
      throw pole_collision("input exponent coincides with ±i tau");
  };

  TwoSidedExpSum out;
  for (const auto& [p, mu] : g.right) {
    check(mu);
    out.right.push_back({p / (k2 - mu * mu), mu});
    out.right.push_back({-alpha * p / (mu - k), k});
    out.left.push_back({-alpha * p / (k + mu), -k});
  }
  for (const auto& [q, nu] : g.left) {
    check(nu);
    out.right.push_back({alpha * q / (nu - k), k});
    out.left.push_back({q / (k2 - nu * nu), nu});
    out.left.push_back({alpha * q / (nu + k), -k});
  }
  return out.simplified();
}

/// Boundary traces of (A_0 - tau²)^{-1} g straight from the kernel integrals.
/// The output is C¹ across 0, so f(+0) = f(-0) and f'(+0) = f'(-0). Unlike the
/// term-list form these stay finite when an input exponent equals i tau.
inline BoundaryTraces free_resolvent_traces(const TwoSidedExpSum& g, cplx tau) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("free_resolvent_traces requires Im tau > 0");
  if (!g.square_integrable()) throw std::invalid_argument("free_resolvent_traces requires a square-integrable input");
  const cplx k = i_times(tau);
  const cplx alpha = -1.0 / (2.0 * k);
  cplx f0{}, f1{};
  for (const auto& [p, mu] : g.right) {
    f0 += -alpha * p / (k + mu);
    f1 += k * alpha * p / (k + mu);
  }
  for (const auto& [q, nu] : g.left) {
    f0 += alpha * q / (nu - k);
    f1 += k * alpha * q / (nu - k);
  }
  return {f0, f0, f1, f1};
}

/// Tolerance below which |p_T(tau)| counts as zero (z on the spectrum).
inline bool near_spectrum(const CouplingMatrix& t, cplx tau) {
  return std::abs(char_poly(t, tau)) <= 1e-12 * char_poly_scale(t, tau);
}

struct ResolventDecomposition {
  cplx tau;
  TwoSidedExpSum free_part;
  cplx c1, c2;

  TwoSidedExpSum correction() const { return c1 * h1(tau) + c2 * h2(tau); }
  TwoSidedExpSum total() const { return (free_part + correction()).simplified(); }
  /// ‖c1 h1 + c2 h2‖² (h1 ⟂ h2, ‖h_j‖² = 1 / Im tau).
  double correction_norm_sq() const { return (std::norm(c1) + std::norm(c2)) / tau.imag(); }
};

namespace detail {

// (c1, c2) with boundary_matrix * (c1, c2) = -(T Γ₀ f₀ - Γ₁ f₀).
inline std::pair<cplx, cplx> correction_coeffs(const CouplingMatrix& t, cplx tau, const BoundaryTraces& free_tr) {
  const Vec2 defect = boundary_defect(t, free_tr);
  const auto m = boundary_matrix(t, tau);
  const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return {(-defect[0] * m[1][1] + defect[1] * m[0][1]) / det, (-defect[1] * m[0][0] + defect[0] * m[1][0]) / det};
}

} // namespace detail

inline ResolventDecomposition apply_resolvent(const CouplingMatrix& t, cplx tau, const TwoSidedExpSum& g) {
  if (near_spectrum(t, tau)) throw at_spectrum("tau² lies on the spectrum of A_T");
  ResolventDecomposition r{tau, free_resolvent(g, tau), 0.0, 0.0};
  std::tie(r.c1, r.c2) = detail::correction_coeffs(t, tau, free_resolvent_traces(g, tau));
  return r;
}

/// Correction coefficients only, from the closed-form free traces; defined
/// also for inputs resonant with the kernel.
inline std::pair<cplx, cplx> resolvent_coefficients(const CouplingMatrix& t, cplx tau, const TwoSidedExpSum& g) {
  if (near_spectrum(t, tau)) throw at_spectrum("tau² lies on the spectrum of A_T");
  return detail::correction_coeffs(t, tau, free_resolvent_traces(g, tau));
}

enum class Side { Plus, Minus };

/// g_+ = exp(-i conj(tau) x) on x > 0, g_- = exp(i conj(tau) x) on x < 0.
inline TwoSidedExpSum canonical_input(cplx tau, Side side) {
  const cplx rate = i_times(std::conj(tau));
  return side == Side::Plus ? TwoSidedExpSum::right_only(1.0, -rate) : TwoSidedExpSum::left_only(1.0, rate);
}

/// Closed-form c_{1±}, c_{2±} for the canonical inputs, F_± = 1 / (4 Im tau).
inline std::pair<cplx, cplx> resolvent_difference_coeffs(const CouplingMatrix& t, cplx tau, Side side) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("resolvent_difference_coeffs requires Im tau > 0");
  if (near_spectrum(t, tau)) throw at_spectrum("tau² lies on the spectrum of A_T");
  const double s = side == Side::Plus ? 1.0 : -1.0;
  const cplx p = char_poly(t, tau);
  const cplx pre = I / (4.0 * tau.imag() * tau);
  const cplx c1 = pre * (-1.0 + (2.0 * t.d * tau * tau - 2.0 * I * tau * (2.0 + s * t.b)) / p);
  const cplx c2 = s * pre * (-1.0 + (-2.0 * I * tau * (2.0 - s * t.c) + 2.0 * t.a) / p);
  return {c1, c2};
}

// ---------------------------------------------------------------------------
// M±, M'±, Phi± on C_++ = { Re tau > 0, Im tau > 0 }.

enum class BoundFn { MPlus, MMinus, MPrimePlus, MPrimeMinus, PhiPlus, PhiMinus };

inline std::string_view to_string(BoundFn f) {
  switch (f) {
  case BoundFn::MPlus: return "M+";
  case BoundFn::MMinus: return "M-";
  case BoundFn::MPrimePlus: return "M'+";
  case BoundFn::MPrimeMinus: return "M'-";
  case BoundFn::PhiPlus: return "Phi+";
  case BoundFn::PhiMinus: return "Phi-";
  }
  return "M+";
}

namespace detail {

inline std::optional<double> m_function(const CouplingMatrix& t, cplx tau, double s) {
  if (near_spectrum(t, tau)) return std::nullopt;
  const cplx det = t.det();
  const cplx n1 = 2.0 * t.d * tau * tau + I * tau * (det - s * 2.0 * t.c);
  const cplx n2 = I * tau * (det + s * 2.0 * t.b) + 2.0 * t.a;
  return (std::norm(n1) + std::norm(n2)) / std::norm(char_poly(t, tau));
}

} // namespace detail

/// Value of one boundedness function; nullopt when tau² sits on the spectrum
/// of the operator the function belongs to.
inline std::optional<double> bound_fn(const CouplingMatrix& t, BoundFn which, cplx tau) {
  switch (which) {
  case BoundFn::MPlus: return detail::m_function(t, tau, 1.0);
  case BoundFn::MMinus: return detail::m_function(t, tau, -1.0);
  case BoundFn::MPrimePlus: return detail::m_function(t.adjoint(), tau, 1.0);
  case BoundFn::MPrimeMinus: return detail::m_function(t.adjoint(), tau, -1.0);
  case BoundFn::PhiPlus:
  case BoundFn::PhiMinus: {
    const auto m = detail::m_function(t, tau, which == BoundFn::PhiPlus ? 1.0 : -1.0);
    if (!m) return std::nullopt;
    return tau.real() * tau.real() / std::norm(tau) * *m;
  }
  }
  return std::nullopt;
}

struct BoundednessValues {
  std::optional<double> m_plus, m_minus, mp_plus, mp_minus, phi_plus, phi_minus;
};

inline BoundednessValues boundedness_functions(const CouplingMatrix& t, cplx tau) {
  if (!(tau.real() > 0.0 && tau.imag() > 0.0)) throw std::invalid_argument("tau must lie in C_++");
  return {bound_fn(t, BoundFn::MPlus, tau),      bound_fn(t, BoundFn::MMinus, tau),
          bound_fn(t, BoundFn::MPrimePlus, tau), bound_fn(t, BoundFn::MPrimeMinus, tau),
          bound_fn(t, BoundFn::PhiPlus, tau),    bound_fn(t, BoundFn::PhiMinus, tau)};
}

struct SupEstimate {
  double sup = 0.0;
  cplx arg{};
  bool diverging = false;
};

namespace detail {

// Approach path tau0 + r e^{i pi/4}, r = 1e-1 ... 1e-8, (or r e^{i pi/4} for
// r -> 0 / infinity). Diverging: monotone growth by at least 1e3.
template <class Eval>
bool grows_along(Eval&& eval, cplx origin, bool outward, SupEstimate& est) {
  const cplx dir = std::polar(1.0, std::numbers::pi / 4);
  constexpr int steps = 15;
  std::vector<double> vals;
  for (int k = 0; k <= steps; ++k) {
    const double e = 1.0 + 7.0 * k / steps;
    const double r = outward ? std::pow(10.0, e) : std::pow(10.0, -e);
    const cplx tau = origin + r * dir;
    const auto v = eval(tau);
    if (!v || !std::isfinite(*v)) {
      est.sup = std::numeric_limits<double>::infinity();
      est.arg = tau;
      return true;
    }
    if (*v > est.sup) {
      est.sup = *v;
      est.arg = tau;
    }
    vals.push_back(*v);
  }
  const bool monotone = std::adjacent_find(vals.begin(), vals.end(),
                                           [](double a, double b) { return b < a * (1.0 - 1e-12); }) == vals.end();
  return monotone && vals.back() > 0.0 && vals.back() >= 1e3 * vals.front();
}

} // namespace detail

/// Supremum of one boundedness function over a log-polar grid of C_++
/// (|tau| in [1e-4, 1e4] x 200, arg in (0, pi/2) x 100), refined along rays
/// into every root of the relevant characteristic polynomial lying in the
/// closure of C_++, into 0 and out to infinity.
inline SupEstimate sup_estimate(const CouplingMatrix& t, BoundFn which) {
  SupEstimate est;
  const auto eval = [&](cplx tau) { return bound_fn(t, which, tau); };

  constexpr int n_r = 200, n_arg = 100;
  for (int i = 0; i < n_r; ++i) {
    const double r = std::pow(10.0, -4.0 + 8.0 * i / (n_r - 1));
    for (int j = 0; j < n_arg; ++j) {
      const double th = (j + 0.5) * (std::numbers::pi / 2) / n_arg;
      const cplx tau = std::polar(r, th);
      const auto v = eval(tau);
      if (!v || !std::isfinite(*v)) {
        est.sup = std::numeric_limits<double>::infinity();
        est.arg = tau;
        est.diverging = true;
        return est;
      }
      if (*v > est.sup) {
        est.sup = *v;
        est.arg = tau;
      }
    }
  }

  const bool adjoint = which == BoundFn::MPrimePlus || which == BoundFn::MPrimeMinus;
  const RootSet roots = solve_char_poly(adjoint ? t.adjoint() : t);
  bool diverging = false;
  for (const auto& r : roots.roots) {
    const double tol = root_tolerance(r.tau);
    if (r.tau.real() < -tol || r.tau.imag() < -tol || std::abs(r.tau) <= tol) continue;
    diverging |= detail::grows_along(eval, r.tau, false, est);
  }
  diverging |= detail::grows_along(eval, 0.0, false, est);
  diverging |= detail::grows_along(eval, 0.0, true, est);
  est.diverging = diverging || est.sup > 1e8;
  return est;
}

// ---------------------------------------------------------------------------
// Integral-resolvent criterion along z = xi + i eps.

struct IntegralRow {
  double eps;
  std::size_t input;
  double value;         // eps ∫ ‖[(A_T - z)^{-1} - (A_0 - z)^{-1}] g‖² dxi
  double adjoint_value; // same for A_T^*
  double radius;        // final truncation radius R
};

struct IntegralCriterion {
  std::vector<IntegralRow> rows;

  double max_value() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max({m, r.value, r.adjoint_value});
    return m;
  }
  /// max / min over eps of the larger of the two estimates, per input; worst input.
  double spread() const {
    std::vector<std::size_t> inputs;
    for (const auto& r : rows) inputs.push_back(r.input);
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
    double worst = 1.0;
    for (auto in : inputs) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (const auto& r : rows)
        if (r.input == in) {
          const double v = std::max(r.value, r.adjoint_value);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      if (hi > 0.0) worst = std::max(worst, lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
    }
    return worst;
  }
};

inline const std::vector<double>& default_eps_ladder() {
  static const std::vector<double> ladder{1.0, 0.1, 0.01, 0.001};
  return ladder;
}

/// exp(-x) on x > 0 and exp(x) on x < 0.
inline std::vector<TwoSidedExpSum> default_test_inputs() {
  return {TwoSidedExpSum::right_only(1.0, -1.0), TwoSidedExpSum::left_only(1.0, 1.0)};
}

namespace detail {

struct LineIntegral {
  double value;
  double radius;
};

inline LineIntegral line_integral(const CouplingMatrix& t, double eps, const TwoSidedExpSum& g,
                                  std::vector<double> features) {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](double xi) {
    const cplx tau = std::sqrt(cplx(xi, eps));
    return eps * apply_resolvent(t, tau, g).correction_norm_sq();
  };
  const auto panel = [&](double a, double b) {
    return gauss_kronrod<double, 15>::integrate(f, a, b, 18, 1e-6);
  };

  double span = 1.0;
  for (double x : features) span = std::max(span, std::abs(x));
  std::vector<double> cuts{0.0};
  for (double x : features)
    for (double w : {0.0, -eps, eps, -10 * eps, 10 * eps}) cuts.push_back(x + w);
  double radius = 4.0 * span + 8.0;
  cuts.push_back(-radius);
  cuts.push_back(radius);
  std::erase_if(cuts, [&](double c) { return c < -radius || c > radius; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += panel(cuts[i], cuts[i + 1]);

  // Grow the truncation radius until the added shell is below 1% of the total.
  while (radius < 1e12) {
    const double shell = panel(radius, 2 * radius) + panel(-2 * radius, -radius);
    total += shell;
    radius *= 2;
    if (std::abs(shell) < 0.01 * std::abs(total) || total == 0.0) break;
  }
  return {total, radius};
}

} // namespace detail

/// eps ∫ ‖[(A_T - z)^{-1} - (A_0 - z)^{-1}] g‖² dxi (and the same for A_T^*)
/// for every eps and input. Requires a real spectrum.
inline IntegralCriterion integral_criterion(const CouplingMatrix& t, const std::vector<double>& epsilons,
                                            const std::vector<TwoSidedExpSum>& inputs) {
  const SpectralReport rep = classify(t);
  if (!rep.spectrum_is_real()) throw complex_spectrum("integral criterion requires a real spectrum");

  std::vector<double> features;
  for (const auto& e : rep.eigenvalues) features.push_back(e.z.real());
  for (const auto& s : rep.singularities)
    if (s.kind != SingularityKind::AtInfinity) features.push_back(s.z);
  for (const auto& g : inputs) {
    for (const auto& term : g.right) features.push_back((-term.rate * term.rate).real());
    for (const auto& term : g.left) features.push_back((-term.rate * term.rate).real());
  }

  IntegralCriterion out;
  const CouplingMatrix adj = t.adjoint();
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto direct = detail::line_integral(t, eps, inputs[i], features);
      const auto adjoint = detail::line_integral(adj, eps, inputs[i], features);
      out.rows.push_back({eps, i, direct.value, adjoint.value, std::max(direct.radius, adjoint.radius)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

/// M± (resp. M'±) are uniformly bounded on C_++: every root of p_T lies in the
/// open lower half-plane, except a simple root at 0 when a = 0 (cancelled by
/// the numerator). Decided from root locations only.
inline bool m_functions_bounded(const CouplingMatrix& t) {
  const RootSet rs = solve_char_poly(t);
  if (rs.identically_zero || rs.degree == 0) return false;
  for (const auto& r : rs.roots) {
    const double tol = root_tolerance(r.tau);
    if (r.tau.imag() < -tol) continue;
    if (std::abs(r.tau) <= tol && r.multiplicity == 1 && std::abs(t.a) <= entry_tol) continue;
    return false;
  }
  return true;
}

struct SimilarityEvidence {
  bool bounded = false;
  std::vector<std::pair<BoundFn, SupEstimate>> sups;
  std::optional<IntegralCriterion> integral;
};

struct SimilarityVerdict {
  enum class Kind { Similar, NotSimilar, Evidence };

  Kind kind = Kind::Evidence;
  std::string reason;
  std::optional<SimilarityEvidence> evidence;
};

inline std::string_view to_string(SimilarityVerdict::Kind k) {
  switch (k) {
  case SimilarityVerdict::Kind::Similar: return "similar";
  case SimilarityVerdict::Kind::NotSimilar: return "not-similar";
  case SimilarityVerdict::Kind::Evidence: return "evidence";
  }
  return "evidence";
}

struct VerdictOptions {
  bool attach_evidence = true;
  std::vector<double> eps_ladder = default_eps_ladder();
};

inline SimilarityEvidence collect_evidence(const CouplingMatrix& t, const std::vector<double>& eps_ladder) {
  SimilarityEvidence ev;
  bool bounded = true;
  for (BoundFn f : {BoundFn::MPlus, BoundFn::MMinus, BoundFn::MPrimePlus, BoundFn::MPrimeMinus}) {
    const auto s = sup_estimate(t, f);
    bounded &= !s.diverging;
    ev.sups.emplace_back(f, s);
  }
  ev.integral = integral_criterion(t, eps_ladder, default_test_inputs());
  bounded &= ev.integral->spread() <= 10.0;
  ev.bounded = bounded;
  return ev;
}

inline SimilarityVerdict similarity_verdict(const CouplingMatrix& t, const VerdictOptions& opt = {}) {
  using K = SimilarityVerdict::Kind;
  const SpectralReport rep = classify(t);
  if (rep.spectrum_is_whole_plane) return {K::NotSimilar, "spectrum is the whole plane", std::nullopt};
  if (rep.has_nonreal_eigenvalue()) return {K::NotSimilar, "non-real eigenvalues", std::nullopt};
  if (rep.has_exceptional_point()) return {K::NotSimilar, "exceptional point", std::nullopt};
  if (rep.has_singularity()) {
    std::string where;
    for (const auto& s : rep.singularities) where = std::string(to_string(s.kind));
    return {K::NotSimilar, "spectral singularity (" + where + ")", std::nullopt};
  }
  if (is_self_adjoint(t)) return {K::Similar, "self-adjoint", std::nullopt};
  if (is_pt_symmetric(t)) {
    const auto ks = similarity_via_krein(t);
    if (ks.verdict == KreinSimilarity::Verdict::Similar) return {K::Similar, "PT-symmetric: " + ks.reason, std::nullopt};
    if (ks.verdict == KreinSimilarity::Verdict::NotSimilar) return {K::NotSimilar, ks.reason, std::nullopt};
  }
  if (m_functions_bounded(t) && m_functions_bounded(t.adjoint()))
    return {K::Similar, "M± and M'± uniformly bounded on C_++", std::nullopt};

  SimilarityVerdict v{K::Evidence, "no closed-form decision; numerical evidence only", std::nullopt};
  if (opt.attach_evidence) v.evidence = collect_evidence(t, opt.eps_ladder);
  return v;
}

} // namespace zrp
