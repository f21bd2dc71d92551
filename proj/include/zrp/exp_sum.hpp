#pragma once

// Closed-form piecewise exponential functions on R \ {0}:
//
//   f(x) = sum_k p_k exp(mu_k x)   for x > 0
//   f(x) = sum_k q_k exp(nu_k x)   for x < 0
//
// Every function the resolvent, eigenfunction and metric formulas produce is of
// this form, so derivatives, boundary traces and L2 norms are exact.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "coupling.hpp"

namespace zrp {

struct ExpTerm {
  cplx coef;
  cplx rate;

  bool operator==(const ExpTerm&) const = default;
};

/// One-sided limits f(+0), f(-0), f'(+0), f'(-0).
struct BoundaryTraces {
  cplx f_plus{}, f_minus{}, df_plus{}, df_minus{};
};

class TwoSidedExpSum {
public:
  std::vector<ExpTerm> right; // x > 0
  std::vector<ExpTerm> left;  // x < 0

  TwoSidedExpSum() = default;
  TwoSidedExpSum(std::vector<ExpTerm> r, std::vector<ExpTerm> l)
      : right(std::move(r)), left(std::move(l)) {}

  static TwoSidedExpSum right_only(cplx coef, cplx rate) { return {{{coef, rate}}, {}}; }
  static TwoSidedExpSum left_only(cplx coef, cplx rate) { return {{}, {{coef, rate}}}; }

  bool empty() const { return right.empty() && left.empty(); }

  /// Re mu_k < 0 on the right and Re nu_k > 0 on the left.
  bool square_integrable() const {
    return std::all_of(right.begin(), right.end(), [](const ExpTerm& t) { return t.rate.real() < 0.0; }) &&
           std::all_of(left.begin(), left.end(), [](const ExpTerm& t) { return t.rate.real() > 0.0; });
  }

  cplx operator()(double x) const {
    const auto& side = x > 0.0 ? right : left;
    cplx s{};
    for (const auto& t : side) s += t.coef * std::exp(t.rate * x);
    return s;
  }

  TwoSidedExpSum derivative() const {
    TwoSidedExpSum out = *this;
    for (auto& t : out.right) t.coef *= t.rate;
    for (auto& t : out.left) t.coef *= t.rate;
    return out;
  }

  BoundaryTraces traces() const {
    BoundaryTraces tr;
    for (const auto& t : right) {
      tr.f_plus += t.coef;
      tr.df_plus += t.coef * t.rate;
    }
    for (const auto& t : left) {
      tr.f_minus += t.coef;
      tr.df_minus += t.coef * t.rate;
    }
    return tr;
  }

  TwoSidedExpSum& operator*=(cplx s) {
    for (auto& t : right) t.coef *= s;
    for (auto& t : left) t.coef *= s;
    return *this;
  }

  TwoSidedExpSum& operator+=(const TwoSidedExpSum& o) {
    right.insert(right.end(), o.right.begin(), o.right.end());
    left.insert(left.end(), o.left.begin(), o.left.end());
    return *this;
  }

  TwoSidedExpSum& operator-=(const TwoSidedExpSum& o) {
    for (const auto& t : o.right) right.push_back({-t.coef, t.rate});
    for (const auto& t : o.left) left.push_back({-t.coef, t.rate});
    return *this;
  }

  /// Merges terms with bit-identical rates and drops exact zeros.
  TwoSidedExpSum simplified() const { return {merge(right), merge(left)}; }

  /// Applies (-d²/dx² - tau²) term by term.
  TwoSidedExpSum helmholtz(cplx tau) const {
    const cplx tau2 = tau * tau;
    TwoSidedExpSum out = *this;
    for (auto& t : out.right) t.coef *= -(t.rate * t.rate) - tau2;
    for (auto& t : out.left) t.coef *= -(t.rate * t.rate) - tau2;
    return out;
  }

  /// Exact squared L2(R) norm.
  double norm_sq() const {
    double s = 0.0;
    for (const auto& tj : right)
      for (const auto& tk : right) s += (-tj.coef * std::conj(tk.coef) / (tj.rate + std::conj(tk.rate))).real();
    for (const auto& tj : left)
      for (const auto& tk : left) s += (tj.coef * std::conj(tk.coef) / (tj.rate + std::conj(tk.rate))).real();
    return s;
  }

  /// Largest coefficient modulus after merging equal rates.
  double max_coef() const {
    double m = 0.0;
    const auto s = simplified();
    for (const auto& t : s.right) m = std::max(m, std::abs(t.coef));
    for (const auto& t : s.left) m = std::max(m, std::abs(t.coef));
    return m;
  }

private:
  static std::vector<ExpTerm> merge(const std::vector<ExpTerm>& in) {
    std::vector<ExpTerm> out;
    for (const auto& t : in) {
      auto it = std::find_if(out.begin(), out.end(), [&](const ExpTerm& o) { return o.rate == t.rate; });
      if (it == out.end())
        out.push_back(t);
      else
        it->coef += t.coef;
    }
    std::erase_if(out, [](const ExpTerm& t) { return t.coef == cplx{}; });
    return out;
  }
};

inline TwoSidedExpSum operator+(TwoSidedExpSum a, const TwoSidedExpSum& b) { return a += b; }
inline TwoSidedExpSum operator-(TwoSidedExpSum a, const TwoSidedExpSum& b) { return a -= b; }
inline TwoSidedExpSum operator*(cplx s, TwoSidedExpSum f) { return f *= s; }

/// i*tau computed without rounding, so (i tau)² + tau² cancels exactly.
inline cplx i_times(cplx tau) { return {-tau.imag(), tau.real()}; }

/// h_{1tau}: exp(i tau |x|), even.
inline TwoSidedExpSum h1(cplx tau) {
  const cplx k = i_times(tau);
  return {{{1.0, k}}, {{1.0, -k}}};
}

/// h_{2tau}: -exp(i tau x) for x > 0, exp(-i tau x) for x < 0.
inline TwoSidedExpSum h2(cplx tau) {
  const cplx k = i_times(tau);
  return {{{-1.0, k}}, {{1.0, -k}}};
}

} // namespace zrp
