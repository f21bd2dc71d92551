// zrp: command-line front end for zero-range potential couplings.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <zrp/fd_oracle.hpp>
#include <zrp/parse.hpp>
#include <zrp/report.hpp>
#include <zrp/scan.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numeric = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CouplingFlags {
  std::string a = "0", b = "0", c = "0", d = "0";

  void add_to(CLI::App* app) {
    app->add_option("--a", a, "entry a (complex literal)")->capture_default_str();
    app->add_option("--b", b, "entry b (complex literal)")->capture_default_str();
    app->add_option("--c", c, "entry c (complex literal)")->capture_default_str();
    app->add_option("--d", d, "entry d (complex literal)")->capture_default_str();
  }

  zrp::CouplingMatrix parse() const {
    return {entry("--a", a), entry("--b", b), entry("--c", c), entry("--d", d)};
  }

  static zrp::cplx entry(const std::string& flag, const std::string& text) {
    const auto z = zrp::parse_complex(text);
    if (!z || !zrp::is_finite(*z)) throw UsageError(flag + ": cannot parse complex literal '" + text + "'");
    return *z;
  }
};

std::pair<double, double> parse_range(const std::string& flag, const std::string& text) {
  const auto colon = text.find(':');
  const auto lo = colon == std::string::npos ? std::nullopt : zrp::detail::parse_real(text.substr(0, colon));
  const auto hi = colon == std::string::npos ? std::nullopt : zrp::detail::parse_real(text.substr(colon + 1));
  if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi))
    throw UsageError(flag + ": expected lo:hi, got '" + text + "'");
  return {*lo, *hi};
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto sep = text.find('x');
  try {
    std::size_t used = 0;
    if (sep == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {n, n};
    }
    const int nx = std::stoi(text.substr(0, sep), &used);
    if (used != sep) throw std::invalid_argument(text);
    const std::string rest = text.substr(sep + 1);
    const int ny = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {nx, ny};
  } catch (const std::exception&) {
    throw UsageError("--res: expected N or NXxNY, got '" + text + "'");
  }
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = zrp::detail::parse_real(item);
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) throw UsageError("--eps-ladder: invalid entry '" + item + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw UsageError("--eps-ladder: empty list");
  return out;
}

void print(const zrp::json& j) { std::cout << j.dump(2) << '\n'; }

zrp::json fd_json(const zrp::fd::ComparisonReport& rep) {
  using zrp::round15;
  using zrp::to_json;
  zrp::json recs = zrp::json::array();
  for (const auto& r : rep.records) {
    zrp::json j{{"closed_form", to_json(r.closed_form)}};
    j["fd"] = r.fd ? to_json(*r.fd) : zrp::json(nullptr);
    j["fd_fine"] = r.fd_fine ? to_json(*r.fd_fine) : zrp::json(nullptr);
    j["error"] = std::isfinite(r.error) ? zrp::json(round15(r.error)) : zrp::json(nullptr);
    j["error_fine"] = std::isfinite(r.error_fine) ? zrp::json(round15(r.error_fine)) : zrp::json(nullptr);
    j["extrapolated_error"] =
        std::isfinite(r.extrapolated_error) ? zrp::json(round15(r.extrapolated_error)) : zrp::json(nullptr);
    j["status"] = r.agree ? "pass" : "fail";
    recs.push_back(j);
  }
  zrp::json skipped = zrp::json::array();
  for (auto z : rep.skipped) skipped.push_back(to_json(z));
  return {{"L", round15(rep.cfg.L)}, {"N", rep.cfg.N}, {"records", recs}, {"skipped", skipped},
          {"status", rep.all_agree() ? "pass" : "fail"}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of zero-range potentials with coupling matrix T = (a b; c d).\n"
               "Complex literals: 're', 'im i', 're+im i', 're-im i'; the coefficient of i may be\n"
               "omitted ('i', '-i', '1+i'). Exponent notation is accepted (1e-3-2.5i).\n"
               "Exit codes: 0 success, 1 numeric failure, 2 usage error."};
  app.require_subcommand(1);

  CouplingFlags flags;
  std::string eps_ladder = "1,0.1,0.01,0.001";

  auto* classify = app.add_subcommand("classify", "spectral report for one coupling");
  flags.add_to(classify);
  classify->add_option("--eps-ladder", eps_ladder, "eps values for numerical evidence")->capture_default_str();

  auto* similarity = app.add_subcommand("similarity", "similarity-to-self-adjoint verdict");
  flags.add_to(similarity);
  similarity->add_option("--eps-ladder", eps_ladder, "eps values for numerical evidence")->capture_default_str();

  std::string tau_text = "i";
  std::string side = "plus";
  auto* resolvent = app.add_subcommand("resolvent", "resolvent difference coefficients at tau");
  flags.add_to(resolvent);
  resolvent->add_option("--tau", tau_text, "spectral parameter, Im tau > 0 (z = tau^2)")->capture_default_str();
  resolvent->add_option("--side", side, "canonical input: plus or minus")->capture_default_str();

  auto* metric = app.add_subcommand("metric", "Krein metric P_phi and Hilbert metric e^Q for PT couplings");
  flags.add_to(metric);

  double fd_L = 30.0;
  int fd_N = 3000;
  auto* oracle = app.add_subcommand("oracle", "finite-difference check of the closed-form eigenvalues");
  flags.add_to(oracle);
  oracle->add_option("--fd-L", fd_L, "box half-length")->capture_default_str();
  oracle->add_option("--fd-N", fd_N, "grid points per half-line")->capture_default_str();

  std::string plane = "complex-a", range_x = "-2:2", range_y = "-2:2", res = "81", out_path, axis_x = "a.re",
              axis_y = "a.im";
  auto* scan = app.add_subcommand("scan", "label every point of a parameter plane (CSV)");
  flags.add_to(scan);
  scan->add_option("--plane", plane, "complex-a | complex-d | xy | custom")->capture_default_str();
  scan->add_option("--range-x", range_x, "x range lo:hi")->capture_default_str();
  scan->add_option("--range-y", range_y, "y range lo:hi")->capture_default_str();
  scan->add_option("--res", res, "grid size N or NXxNY")->capture_default_str();
  scan->add_option("--out", out_path, "output file (default: standard output)");
  scan->add_option("--axis-x", axis_x, "custom plane x axis, e.g. b.im")->capture_default_str();
  scan->add_option("--axis-y", axis_y, "custom plane y axis, e.g. c.im")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    const zrp::CouplingMatrix t = flags.parse();
    zrp::VerdictOptions vopt;
    vopt.eps_ladder = parse_ladder(eps_ladder);

    if (*classify) {
      print(zrp::full_report(t, vopt));
    } else if (*similarity) {
      zrp::json j{{"coupling", zrp::to_json(t)}};
      j["verdict"] = zrp::verdict_json(zrp::similarity_verdict(t, vopt));
      print(j);
    } else if (*resolvent) {
      const zrp::cplx tau = CouplingFlags::entry("--tau", tau_text);
      if (!(tau.imag() > 0.0)) throw UsageError("--tau: Im tau must be positive");
      if (side != "plus" && side != "minus") throw UsageError("--side: expected plus or minus");
      const auto s = side == "plus" ? zrp::Side::Plus : zrp::Side::Minus;
      const auto g = zrp::canonical_input(tau, s);
      const auto [c1, c2] = zrp::resolvent_coefficients(t, tau, g);
      const auto [l1, l2] = zrp::resolvent_difference_coeffs(t, tau, s);
      zrp::json j{{"coupling", zrp::to_json(t)},
                  {"tau", zrp::to_json(tau)},
                  {"z", zrp::to_json(tau * tau)},
                  {"side", side},
                  {"c1", zrp::to_json(c1)},
                  {"c2", zrp::to_json(c2)},
                  {"c1_closed_form", zrp::to_json(l1)},
                  {"c2_closed_form", zrp::to_json(l2)},
                  {"difference_norm_sq", zrp::round15((std::norm(c1) + std::norm(c2)) / tau.imag())}};
      try {
        const auto total = zrp::apply_resolvent(t, tau, g).total();
        j["boundary_residual"] = zrp::round15(zrp::boundary_residual(t, total.traces()));
      } catch (const zrp::pole_collision&) {
        j["boundary_residual"] = nullptr; // resonant input: no exponential-sum form of the full resolvent
      }
      if (tau.real() > 0.0) {
        const auto b = zrp::boundedness_functions(t, tau);
        const auto val = [](const std::optional<double>& v) { return v ? zrp::json(zrp::round15(*v)) : zrp::json(nullptr); };
        j["boundedness"] = {{"M+", val(b.m_plus)},   {"M-", val(b.m_minus)},     {"M'+", val(b.mp_plus)},
                            {"M'-", val(b.mp_minus)}, {"Phi+", val(b.phi_plus)}, {"Phi-", val(b.phi_minus)}};
      }
      print(j);
    } else if (*metric) {
      if (!zrp::is_pt_symmetric(t)) throw zrp::not_pt_symmetric();
      zrp::json j{{"coupling", zrp::to_json(t)}};
      j["metric"] = zrp::metric_json(t, zrp::krein_metric(t));
      const auto ks = zrp::similarity_via_krein(t);
      j["similarity"] = {{"verdict", std::string(zrp::to_string(ks.verdict))}, {"reason", ks.reason}};
      print(j);
    } else if (*oracle) {
      zrp::fd::DiscretizationConfig cfg{fd_L, fd_N};
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(fd_N < 16 ? "--fd-N: " : "--fd-L: ") + e.what());
      }
      zrp::json j{{"coupling", zrp::to_json(t)}};
      j["oracle"] = fd_json(zrp::fd::compare(t, cfg));
      print(j);
    } else if (*scan) {
      zrp::ScanSpec spec;
      try {
        spec.plane = zrp::parse_plane(plane);
        spec.axis_x = zrp::AxisSpec::parse(axis_x);
        spec.axis_y = zrp::AxisSpec::parse(axis_y);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--plane/--axis: ") + e.what());
      }
      std::tie(spec.x_lo, spec.x_hi) = parse_range("--range-x", range_x);
      std::tie(spec.y_lo, spec.y_hi) = parse_range("--range-y", range_y);
      std::tie(spec.nx, spec.ny) = parse_resolution(res);
      spec.base = t;
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--res/--range/--plane: ") + e.what());
      }
      const auto pts = zrp::run_scan(spec);
      if (out_path.empty()) {
        zrp::write_csv(std::cout, pts);
      } else {
        std::ofstream os(out_path);
        if (!os) throw UsageError("--out: cannot open '" + out_path + "' for writing");
        zrp::write_csv(os, pts);
        if (!os) throw UsageError("--out: write to '" + out_path + "' failed");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const zrp::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}
