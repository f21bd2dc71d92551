// Classifies a handful of couplings and prints eigenvalues, singularities and
// the similarity verdict for each.

#include <cstdio>
#include <vector>

#include <zrp/zrp.hpp>

int main() {
  using namespace zrp;
  const std::vector<std::pair<const char*, CouplingMatrix>> cases{
      {"delta, a = -2", delta_coupling(-2.0)},
      {"delta, a = 2i", delta_coupling(2.0 * I)},
      {"delta, a = -2 + i", delta_coupling(cplx(-2.0, 1.0))},
      {"delta', d = 1", delta_prime_coupling(1.0)},
      {"PT, (5, 4i, 3i, -1)", pt_coupling(5, 4, 3, -1)},
      {"PT, (0, 2i, 2i, 0)", pt_coupling(0, 2, 2, 0)},
  };
  VerdictOptions opt;
  opt.attach_evidence = false;
  for (const auto& [name, t] : cases) {
    const SpectralReport rep = classify(t);
    std::printf("%s  [%s]\n", name, std::string(to_string(rep.symmetry)).c_str());
    if (rep.spectrum_is_whole_plane) std::printf("  spectrum is the whole plane\n");
    for (const auto& e : rep.eigenvalues) std::printf("  eigenvalue  z = %.12g %+.12gi\n", e.z.real(), e.z.imag() + 0.0);
    for (const auto& s : rep.singularities)
      std::printf("  singularity (%s)  z = %.12g\n", std::string(to_string(s.kind)).c_str(), s.z);
    const auto v = similarity_verdict(t, opt);
    std::printf("  verdict: %s (%s)\n\n", std::string(to_string(v.kind)).c_str(), v.reason.c_str());
  }
}
