// Builds the metric operator exp(Q) for a PT-symmetric coupling and checks
// that it maps the operator domain into the adjoint domain on a resolvent
// image.

#include <cmath>
#include <cstdio>

#include <zrp/zrp.hpp>

int main() {
  using namespace zrp;
  const CouplingMatrix t = pt_coupling(0, 1, 1, 0); // b = c = i
  const PtInvariants inv = pt_invariants(t);
  std::printf("D = %g, K = %g, cell: %s\n", inv.D, inv.K, std::string(to_string(pt_cell(t))).c_str());

  const MetricSpec m = krein_metric(t);
  if (!m.chi) {
    std::printf("no metric operator of this family\n");
    return 0;
  }
  std::printf("phi = %.15g, chi = %.15g, tanh chi = %.15g\n", m.phi, *m.chi, std::tanh(*m.chi));
  std::printf("identity residual = %.3g\n", metric_identity_residual(t, m.phi, *m.chi));

  const cplx tau{0.5, 1.0};
  const auto g = TwoSidedExpSum::right_only(1.0, -1.0);
  const auto f = apply_resolvent(t, tau, g).total();
  const auto ef = apply_metric_operator(m.phi, *m.chi, f);
  std::printf("boundary residual of f for T:        %.3g\n", boundary_residual(t, f.traces()));
  std::printf("boundary residual of exp(Q) f for T*: %.3g\n", boundary_residual(t.adjoint(), ef.traces()));
}
