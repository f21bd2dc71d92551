#pragma once

// Finite-difference model of -d²/dx² on [-L, L] with the interface condition
// T Γ₀ f = Γ₁ f at 0 and Dirichlet ends.
//
// Unknowns, in order: v_{N-1} .. v_0, v_{-1}, u_{-1}, u_0 .. u_{N-1}, where
// u_j ≈ f(jh), v_j ≈ f(-jh) and the two middle entries are ghost values that
// continue each half-line solution one step across the origin. The one-sided
// limits f(±0), f'(±0) are then second-order central differences. The ghost
// values cannot be eliminated for every T (for d = 0 the interface rows do
// not involve them symmetrically), so the discrete problem is kept as a
// pencil A x = z B x with B = 0 on the two interface rows.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "coupling.hpp"
#include "errors.hpp"
#include "spectral_classifier.hpp"

namespace zrp::fd {

struct DiscretizationConfig {
  double L = 30.0;
  int N = 3000;

  double h() const { return L / N; }
  void validate() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("L must be positive");
    if (N < 16) throw std::invalid_argument("N must be at least 16");
  }
};

using SpMat = Eigen::SparseMatrix<cplx>;

struct Pencil {
  SpMat A;
  SpMat B;
  DiscretizationConfig cfg;

  Eigen::Index size() const { return A.rows(); }
};

inline Pencil build_matrix(const CouplingMatrix& t, const DiscretizationConfig& cfg) {
  cfg.validate();
  const int N = cfg.N;
  const Eigen::Index n = 2 * N + 2;
  const double h = cfg.h();
  const double ih2 = 1.0 / (h * h);

  // Column indices.
  // side = +1: u_j = f(jh); side = -1: v_j = f(-jh); j = -1 .. N-1.
  const auto idx = [N](int side, int j) -> Eigen::Index { return side > 0 ? N + 2 + j : N - 1 - j; };
  const auto u = [&](int j) { return idx(1, j); };
  const auto v = [&](int j) { return idx(-1, j); };

  std::vector<Eigen::Triplet<cplx>> ta, tb;
  ta.reserve(6 * N + 16);
  tb.reserve(2 * N);

  // Laplacian rows for u_0..u_{N-1}, v_0..v_{N-1}; row index = column of the
  // centre unknown. Index N (resp. -1) beyond the ends is the Dirichlet zero.
  for (int j = 0; j < N; ++j) {
    for (int side : {1, -1}) {
      const Eigen::Index r = idx(side, j);
      ta.emplace_back(r, r, 2.0 * ih2);
      ta.emplace_back(r, idx(side, j - 1), -ih2);
      if (j + 1 < N) ta.emplace_back(r, idx(side, j + 1), -ih2);
      tb.emplace_back(r, r, 1.0);
    }
  }

  // Interface rows sit in the ghost slots.
  //   mean  = (u0 + v0)/2,   p = f'(+0) = (u1 - u_{-1})/2h,   q = f'(-0) = (v_{-1} - v1)/2h
  //   E1: a mean - b (p + q)/2 - (p - q) = 0
  //   E2: c mean - d (p + q)/2 - (u0 - v0) = 0
  const double i2h = 1.0 / (2.0 * h);
  const Eigen::Index e1 = v(-1), e2 = u(-1);
  const auto row = [&](Eigen::Index r, cplx c_mean, cplx c_p, cplx c_q, cplx c_u0, cplx c_v0) {
    ta.emplace_back(r, u(0), 0.5 * c_mean + c_u0);
    ta.emplace_back(r, v(0), 0.5 * c_mean + c_v0);
    ta.emplace_back(r, u(1), c_p * i2h);
    ta.emplace_back(r, u(-1), -c_p * i2h);
    ta.emplace_back(r, v(-1), c_q * i2h);
    ta.emplace_back(r, v(1), -c_q * i2h);
  };
  row(e1, t.a, -0.5 * t.b - 1.0, -0.5 * t.b + 1.0, 0.0, 0.0);
  row(e2, t.c, -0.5 * t.d, -0.5 * t.d, -1.0, 1.0);

  Pencil p{SpMat(n, n), SpMat(n, n), cfg};
  p.A.setFromTriplets(ta.begin(), ta.end());
  p.B.setFromTriplets(tb.begin(), tb.end());
  p.A.makeCompressed();
  p.B.makeCompressed();
  return p;
}

struct Window {
  double re_lo, re_hi, im_lo, im_hi;

  bool contains(cplx z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
  cplx centre() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
};

struct ArnoldiSettings {
  int min_dim = 40;
  int max_dim = 320;
  double tol = 1e-10;
};

namespace detail {

struct RitzPair {
  cplx z;
  double residual; // relative Ritz residual estimate
};

// Arnoldi on Op = (A - sigma B)^{-1} B; eigenvalue theta of Op maps to
// z = sigma + 1/theta.
inline std::vector<RitzPair> shift_invert_arnoldi(const Pencil& p, cplx sigma, int dim) {
  using Vec = Eigen::VectorXcd;
  const Eigen::Index n = p.size();
  dim = static_cast<int>(std::min<Eigen::Index>(dim, n - 2));

  SpMat shifted = p.A - sigma * p.B;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(shifted);
  lu.factorize(shifted);
  if (lu.info() != Eigen::Success) throw convergence_failure("sparse LU failed at shift " + std::to_string(sigma.real()) + "+" + std::to_string(sigma.imag()) + "i");

  Eigen::MatrixXcd V(n, dim + 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim + 1, dim);
  // Deterministic start vector with every component nonzero.
  Vec v0(n);
  for (Eigen::Index i = 0; i < n; ++i) v0[i] = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
  v0 = lu.solve(p.B * v0); // start inside the range of Op (drops infinite modes)
  V.col(0) = v0 / v0.norm();

  int m = dim;
  for (int j = 0; j < dim; ++j) {
    Vec w = lu.solve(p.B * V.col(j));
    for (int pass = 0; pass < 2; ++pass) { // classical Gram-Schmidt, twice
      const Vec c = V.leftCols(j + 1).adjoint() * w;
      w -= V.leftCols(j + 1) * c;
      H.block(0, j, j + 1, 1) += c;
    }
    const double beta = w.norm();
    H(j + 1, j) = beta;
    if (beta <= 1e-14 * H.col(j).norm()) {
      m = j + 1;
      break;
    }
    V.col(j + 1) = w / beta;
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(m, m));
  if (es.info() != Eigen::Success) throw convergence_failure("Hessenberg eigensolve failed");
  const double beta = std::abs(H(m, m - 1));
  std::vector<RitzPair> out;
  for (int k = 0; k < m; ++k) {
    const cplx theta = es.eigenvalues()[k];
    if (std::abs(theta) == 0.0) continue;
    const double res = beta * std::abs(es.eigenvectors()(m - 1, k)) / std::abs(theta);
    out.push_back({sigma + 1.0 / theta, res});
  }
  return out;
}

} // namespace detail

/// Discrete eigenvalues inside the window, at most `count`, sorted by |z|.
/// Shift-invert Arnoldi is run from a 3x3 grid of shifts over the window; the
/// Krylov dimension grows until every Ritz value inside the window has
/// converged.
inline std::vector<cplx> discrete_eigenvalues(const Pencil& p, int count, const Window& w,
                                              const ArnoldiSettings& s = {}) {
  std::vector<cplx> found;
  const double span = std::max({w.re_hi - w.re_lo, w.im_hi - w.im_lo, 1e-300});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const cplx sigma{w.re_lo + (i + 0.5) / 3.0 * (w.re_hi - w.re_lo),
                       w.im_lo + (j + 0.5) / 3.0 * (w.im_hi - w.im_lo)};
      for (int dim = s.min_dim;; dim *= 2) {
        const auto ritz = detail::shift_invert_arnoldi(p, sigma, dim);
        std::vector<cplx> accepted;
        bool converged = true;
        double worst = 0.0;
        for (const auto& r : ritz) {
          if (!w.contains(r.z)) continue;
          const double rel = r.residual * std::abs(r.z - sigma) / (1.0 + std::abs(r.z));
          if (rel > s.tol) {
            converged = false;
            worst = std::max(worst, rel);
          } else {
            accepted.push_back(r.z);
          }
        }
        if (converged || dim >= s.max_dim) {
          if (!converged)
            throw convergence_failure("Arnoldi did not converge: dim " + std::to_string(dim) +
                                      ", worst relative residual " + std::to_string(worst));
          for (cplx z : accepted) {
            const bool dup = std::any_of(found.begin(), found.end(), [&](cplx o) {
              return std::abs(o - z) <= 1e-8 * (1.0 + std::abs(z)) + 1e-12 * span;
            });
            if (!dup) found.push_back(z);
          }
          break;
        }
      }
    }
  std::sort(found.begin(), found.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
  if (count >= 0 && static_cast<int>(found.size()) > count) found.resize(count);
  return found;
}

/// Lowest eigenvalue of the discrete Dirichlet Laplacian that the T = 0 pencil
/// reduces to: 2N - 1 interior nodes on [-L, L].
inline double free_box_ground_state(const DiscretizationConfig& cfg) {
  const double h = cfg.h();
  const double s = std::sin(std::numbers::pi * h / (4.0 * cfg.L));
  return 4.0 / (h * h) * s * s;
}

// ---------------------------------------------------------------------------

struct ComparisonRecord {
  cplx closed_form;
  std::optional<cplx> fd;        // nearest discrete eigenvalue at N
  std::optional<cplx> fd_fine;   // same at 2N
  double error = std::numeric_limits<double>::infinity();
  double error_fine = std::numeric_limits<double>::infinity();
  double extrapolated_error = std::numeric_limits<double>::infinity(); // |z_N - z_Richardson|
  bool agree = false;

  double improvement() const { return error_fine > 0.0 ? error / error_fine : std::numeric_limits<double>::infinity(); }
};

struct ComparisonReport {
  DiscretizationConfig cfg;
  std::vector<ComparisonRecord> records;
  std::vector<cplx> skipped; // eigenvalues too close to the box scale to compare

  bool all_agree() const {
    return std::all_of(records.begin(), records.end(), [](const ComparisonRecord& r) { return r.agree; });
  }
};

/// Box of half-width 0.4 * dist(z0, [0, inf)) around z0; never reaches the
/// discretised continuous spectrum.
inline Window window_around(cplx z0) {
  const double dist = z0.real() >= 0.0 ? std::abs(z0.imag()) : std::abs(z0);
  const double r = 0.4 * dist;
  return {z0.real() - r, z0.real() + r, z0.imag() - r, z0.imag() + r};
}

/// Pairs a reference eigenvalue z0 with the nearest discrete eigenvalue of a
/// coarse pencil and of its refinement (twice the points).
inline ComparisonRecord compare_at(const Pencil& coarse, const Pencil& fine, cplx z0) {
  const auto nearest = [&](const std::vector<cplx>& zs) -> std::optional<cplx> {
    if (zs.empty()) return std::nullopt;
    return *std::min_element(zs.begin(), zs.end(),
                             [&](cplx x, cplx y) { return std::abs(x - z0) < std::abs(y - z0); });
  };
  ComparisonRecord rec;
  rec.closed_form = z0;
  const Window w = window_around(z0);
  rec.fd = nearest(discrete_eigenvalues(coarse, -1, w));
  rec.fd_fine = nearest(discrete_eigenvalues(fine, -1, w));
  if (rec.fd && rec.fd_fine) {
    rec.error = std::abs(*rec.fd - z0);
    rec.error_fine = std::abs(*rec.fd_fine - z0);
    const cplx z_rich = (4.0 * *rec.fd_fine - *rec.fd) / 3.0;
    rec.extrapolated_error = std::abs(*rec.fd - z_rich);
    rec.agree = rec.error <= 10.0 * rec.extrapolated_error + 1e-9 * (1.0 + std::abs(z0));
  }
  return rec;
}

inline ComparisonReport compare(const CouplingMatrix& t, const DiscretizationConfig& cfg = {}) {
  cfg.validate();
  ComparisonReport rep{cfg, {}, {}};
  const SpectralReport sr = classify(t);
  const double min_im = std::log(1e8) / cfg.L;

  std::vector<cplx> targets;
  for (const auto& e : sr.eigenvalues) {
    const Window w = window_around(e.z);
    if (e.tau.imag() > min_im && w.re_hi - w.re_lo > 2e-2)
      targets.push_back(e.z);
    else
      rep.skipped.push_back(e.z);
  }
  if (targets.empty()) return rep;

  const Pencil coarse = build_matrix(t, cfg);
  DiscretizationConfig fine_cfg = cfg;
  fine_cfg.N *= 2;
  const Pencil fine = build_matrix(t, fine_cfg);

  for (cplx z0 : targets) rep.records.push_back(compare_at(coarse, fine, z0));
  return rep;
}

} // namespace zrp::fd
