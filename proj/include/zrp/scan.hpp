#pragma once

// Parameter-plane scans: one classification label per grid point, written as
// CSV "x,y,D,K,label" in row-major order (x outer, y inner).

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coupling.hpp"
#include "resolvent_engine.hpp"
#include "spectral_classifier.hpp"

namespace zrp {

enum class ScanLabel {
  SelfAdjoint,
  Similar,
  ComplexEigenvalues,
  NonzeroSingularity,
  SingularityZero,
  SingularityInf,
  Exceptional,
  WholePlane,
  Borderline,
};

inline std::string_view to_string(ScanLabel l) {
  switch (l) {
  case ScanLabel::SelfAdjoint: return "self-adjoint";
  case ScanLabel::Similar: return "similar";
  case ScanLabel::ComplexEigenvalues: return "complex-eigenvalues";
  case ScanLabel::NonzeroSingularity: return "nonzero-singularity";
  case ScanLabel::SingularityZero: return "singularity-0";
  case ScanLabel::SingularityInf: return "singularity-inf";
  case ScanLabel::Exceptional: return "exceptional";
  case ScanLabel::WholePlane: return "whole-plane";
  case ScanLabel::Borderline: return "borderline";
  }
  return "borderline";
}

inline ScanLabel label_for_cell(PtCell c, bool self_adjoint) {
  switch (c) {
  case PtCell::Similarity: return self_adjoint ? ScanLabel::SelfAdjoint : ScanLabel::Similar;
  case PtCell::ExceptionalPoint: return ScanLabel::Exceptional;
  case PtCell::SingularityAtZero: return ScanLabel::SingularityZero;
  case PtCell::SingularityAtInfinity: return ScanLabel::SingularityInf;
  case PtCell::WholePlane: return ScanLabel::WholePlane;
  case PtCell::ComplexPair: return ScanLabel::ComplexEigenvalues;
  case PtCell::NonzeroSingularity: return ScanLabel::NonzeroSingularity;
  }
  return ScanLabel::Borderline;
}

struct PointLabel {
  ScanLabel label;
  std::optional<PtInvariants> invariants; // PT points only
};

/// PT couplings are labelled from the sign table of (D, K); a sign inside its
/// tolerance band without being exactly zero gives Borderline. Other couplings
/// are labelled from the root classification.
inline PointLabel label_point(const CouplingMatrix& t) {
  if (is_pt_symmetric(t)) {
    const PtInvariants inv = pt_invariants(t);
    if (pt_sign_tie(inv)) return {ScanLabel::Borderline, inv};
    return {label_for_cell(pt_cell(t), is_self_adjoint(t)), inv};
  }

  const SpectralReport rep = classify(t);
  if (rep.spectrum_is_whole_plane) return {ScanLabel::WholePlane, std::nullopt};
  if (rep.tolerance_binned) return {ScanLabel::Borderline, std::nullopt};
  if (rep.has_nonreal_eigenvalue()) return {ScanLabel::ComplexEigenvalues, std::nullopt};
  if (rep.has_exceptional_point()) return {ScanLabel::Exceptional, std::nullopt};
  for (const auto& s : rep.singularities) {
    switch (s.kind) {
    case SingularityKind::Nonzero: return {ScanLabel::NonzeroSingularity, std::nullopt};
    case SingularityKind::AtZero: return {ScanLabel::SingularityZero, std::nullopt};
    case SingularityKind::AtInfinity: return {ScanLabel::SingularityInf, std::nullopt};
    }
  }
  if (is_self_adjoint(t)) return {ScanLabel::SelfAdjoint, std::nullopt};
  VerdictOptions opt;
  opt.attach_evidence = false;
  if (similarity_verdict(t, opt).kind == SimilarityVerdict::Kind::Similar) return {ScanLabel::Similar, std::nullopt};
  return {ScanLabel::Borderline, std::nullopt}; // real spectrum, similarity undecided
}

// ---------------------------------------------------------------------------

enum class Plane { ComplexA, ComplexD, XY, Custom };

/// Entry selector for custom planes, e.g. "b.im".
struct AxisSpec {
  int entry = 0;     // 0..3 for a, b, c, d
  bool imag = false;

  static AxisSpec parse(std::string_view s) {
    if (s.size() != 4 || s[1] != '.' || (s.substr(2) != "re" && s.substr(2) != "im") || s[0] < 'a' || s[0] > 'd')
      throw std::invalid_argument("axis must look like a.re, b.im, ...");
    return {s[0] - 'a', s.substr(2) == "im"};
  }
  std::string str() const { return std::string(1, static_cast<char>('a' + entry)) + (imag ? ".im" : ".re"); }
};

struct ScanSpec {
  Plane plane = Plane::ComplexA;
  double x_lo = -2, x_hi = 2, y_lo = -2, y_hi = 2;
  int nx = 81, ny = 81;
  CouplingMatrix base{};        // fixed entries for XY and Custom planes
  AxisSpec axis_x{0, false}, axis_y{0, true};

  void validate() const {
    if (nx < 2 || ny < 2) throw std::invalid_argument("resolution must be at least 2 per axis");
    for (double v : {x_lo, x_hi, y_lo, y_hi})
      if (!std::isfinite(v)) throw std::invalid_argument("scan ranges must be finite");
    if (plane == Plane::XY && !(is_real(base.a) && is_real(base.d)))
      throw std::invalid_argument("xy plane needs real a and d");
    if (plane == Plane::Custom && axis_x.entry == axis_y.entry && axis_x.imag == axis_y.imag)
      throw std::invalid_argument("custom axes must differ");
  }

  double x_at(int i) const { return x_lo + (x_hi - x_lo) * i / (nx - 1); }
  double y_at(int j) const { return y_lo + (y_hi - y_lo) * j / (ny - 1); }

  CouplingMatrix coupling_at(double x, double y) const {
    switch (plane) {
    case Plane::ComplexA: return delta_coupling(cplx(x, y));
    case Plane::ComplexD: return delta_prime_coupling(cplx(x, y));
    case Plane::XY: return pt_coupling(base.a.real(), x, y, base.d.real());
    case Plane::Custom: {
      std::array<cplx, 4> e{base.a, base.b, base.c, base.d};
      const auto set = [&](const AxisSpec& ax, double v) {
        e[ax.entry] = ax.imag ? cplx(e[ax.entry].real(), v) : cplx(v, e[ax.entry].imag());
      };
      set(axis_x, x);
      set(axis_y, y);
      return {e[0], e[1], e[2], e[3]};
    }
    }
    return {};
  }
};

inline Plane parse_plane(std::string_view s) {
  if (s == "complex-a") return Plane::ComplexA;
  if (s == "complex-d") return Plane::ComplexD;
  if (s == "xy") return Plane::XY;
  if (s == "custom") return Plane::Custom;
  throw std::invalid_argument("unknown plane '" + std::string(s) + "'");
}

struct ScanPoint {
  double x, y;
  PointLabel label;
};

inline std::vector<ScanPoint> run_scan(const ScanSpec& spec) {
  spec.validate();
  std::vector<ScanPoint> out;
  out.reserve(static_cast<std::size_t>(spec.nx) * spec.ny);
  for (int i = 0; i < spec.nx; ++i)
    for (int j = 0; j < spec.ny; ++j) {
      const double x = spec.x_at(i), y = spec.y_at(j);
      out.push_back({x, y, label_point(spec.coupling_at(x, y))});
    }
  return out;
}

/// %.15g, the format used for every number the tools print.
inline std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v + 0.0); // no "-0"
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<ScanPoint>& pts) {
  os << "x,y,D,K,label\n";
  for (const auto& p : pts) {
    os << fmt15(p.x) << ',' << fmt15(p.y) << ',';
    if (p.label.invariants) os << fmt15(p.label.invariants->D) << ',' << fmt15(p.label.invariants->K);
    else os << ',';
    os << ',' << to_string(p.label.label) << '\n';
  }
}

} // namespace zrp
