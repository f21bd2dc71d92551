#pragma once

#include <cfloat>
#include <limits>
#include <random>

#include <zrp/coupling.hpp>
#include <zrp/exp_sum.hpp>

namespace zrp::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx random_complex(std::mt19937_64& rng, double r) { return {uniform(rng, -r, r), uniform(rng, -r, r)}; }

inline CouplingMatrix random_coupling(std::mt19937_64& rng, double r = 5.0) {
  return {random_complex(rng, r), random_complex(rng, r), random_complex(rng, r), random_complex(rng, r)};
}

inline CouplingMatrix random_pt(std::mt19937_64& rng, double r = 5.0) {
  return pt_coupling(uniform(rng, -r, r), uniform(rng, -r, r), uniform(rng, -r, r), uniform(rng, -r, r));
}

/// tau in the open upper half-plane, bounded away from the real axis.
inline cplx random_tau(std::mt19937_64& rng) { return {uniform(rng, -3.0, 3.0), uniform(rng, 0.1, 3.0)}; }

/// One-sided decaying exponentials on both half-lines.
inline TwoSidedExpSum random_input(std::mt19937_64& rng, int terms = 2) {
  TwoSidedExpSum g;
  for (int k = 0; k < terms; ++k) {
    g.right.push_back({random_complex(rng, 2.0), {-uniform(rng, 0.2, 3.0), uniform(rng, -3.0, 3.0)}});
    g.left.push_back({random_complex(rng, 2.0), {uniform(rng, 0.2, 3.0), uniform(rng, -3.0, 3.0)}});
  }
  return g;
}

inline double rel_err(cplx x, cplx ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

/// Term-list residual of (-d²/dx² - tau²) f = g, in units of the rounding
/// error of the matching input coefficient. Terms whose rate is not a rate of
/// g (the homogeneous e^{±i tau x} parts) must cancel to exactly zero;
/// otherwise the result is infinite.
inline double ode_residual_ulps(const TwoSidedExpSum& f, const TwoSidedExpSum& g, cplx tau) {
  const TwoSidedExpSum r = (f.helmholtz(tau) - g).simplified();
  const TwoSidedExpSum gs = g.simplified();
  double worst = 0.0;
  const auto side = [&](const std::vector<ExpTerm>& res, const std::vector<ExpTerm>& in) {
    for (const auto& t : res) {
      double scale = 0.0;
      for (const auto& u : in)
        if (u.rate == t.rate) scale = std::abs(u.coef);
      worst = std::max(worst, scale > 0.0 ? std::abs(t.coef) / (scale * DBL_EPSILON)
                                          : std::numeric_limits<double>::infinity());
    }
  };
  side(r.right, gs.right);
  side(r.left, gs.left);
  return worst;
}

} // namespace zrp::testing
