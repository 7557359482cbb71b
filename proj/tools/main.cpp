#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opuc/config.hpp"
#include "opuc/moments.hpp"
#include "opuc/errors.hpp"
#include "opuc/report.hpp"
#include "opuc/zeros.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitDomain = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct FamilyOpts {
  std::string family = "cj";
  double a = 1.0, b = 0.5, t = 1.0, q = 0.5;
  bool a_set = false, b_set = false, t_set = false, q_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "weight family: cj | sz | mb | rs | lebesgue | random");
    cmd->add_option("--a", a, "circular Jacobi / Szego parameter a")
        ->each([this](const std::string&) { a_set = true; });
    cmd->add_option("--b", b, "Szego parameter b")
        ->each([this](const std::string&) { b_set = true; });
    cmd->add_option("--t", t, "modified Bessel parameter t")
        ->each([this](const std::string&) { t_set = true; });
    cmd->add_option("--q", q, "Rogers-Szego parameter q")
        ->each([this](const std::string&) { q_set = true; });
  }

  std::map<std::string, double> params() const {
    std::map<std::string, double> p;
    if (family == "cj") p["a"] = a;
    if (family == "sz") {
      p["a"] = a;
      p["b"] = b;
    }
    if (family == "mb") p["t"] = t;
    if (family == "rs") p["q"] = q;
    return p;
  }
};

int run_guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const opuc::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const opuc::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const opuc::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

void apply_tolerance_overrides(opuc::VerificationReport& rep,
                               const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw opuc::IoError("--tol expects name=value, got '" + ov + "'");
    const std::string name = ov.substr(0, eq);
    const double tol = std::stod(ov.substr(eq + 1));
    bool found = false;
    for (auto& c : rep.checks)
      if (c.name == name) {
        c.tolerance = tol;
        c.pass = c.residual <= tol;
        found = true;
      }
    if (!found) throw opuc::DomainError("--tol: no check named '" + name + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthonormal polynomials on the unit circle: construction and "
               "identity-verification toolkit"};
  app.require_subcommand(1);

  // ---- build
  auto* cmd_build = app.add_subcommand("build", "construct a system and print its tables");
  FamilyOpts bopt;
  bopt.attach(cmd_build);
  int build_n = 8;
  std::string build_route = "closed";
  std::string build_out;
  std::string build_moments;
  cmd_build->add_option("--n", build_n, "maximal degree N");
  cmd_build->add_option("--route", build_route, "closed | recurrence | moments");
  cmd_build->add_option("--out", build_out, "write the system JSON here");
  cmd_build->add_option("--moments", build_moments,
                        "JSON file of [re, im] moment pairs (family custom)");

  // ---- verify
  auto* cmd_verify = app.add_subcommand("verify", "run one verification suite");
  FamilyOpts vopt;
  vopt.family = "random";
  vopt.attach(cmd_verify);
  std::string verify_suite;
  int verify_n = 8;
  std::string verify_out;
  std::vector<std::string> verify_tols;
  cmd_verify->add_option("--suite", verify_suite, "suite name (see 'explain')")->required();
  cmd_verify->add_option("--n", verify_n, "maximal degree N");
  cmd_verify->add_option("--out", verify_out, "write the report JSON here");
  cmd_verify->add_option("--tol", verify_tols, "override check tolerance, name=value");

  // ---- report-all
  auto* cmd_all = app.add_subcommand("report-all", "run a whole config of suites");
  std::string all_config;
  std::string all_outdir;
  cmd_all->add_option("--config", all_config, "TOML or JSON config (default: built-in)");
  cmd_all->add_option("--out-dir", all_outdir, "directory for report JSON and .dat files");

  // ---- explain
  auto* cmd_explain = app.add_subcommand("explain", "describe a suite and its anchor");
  std::string explain_suite;
  cmd_explain->add_option("suite", explain_suite, "suite name (omit to list all)");

  // ---- roots
  auto* cmd_roots = app.add_subcommand("roots", "zeros of phi_n as CSV");
  FamilyOpts ropt;
  ropt.attach(cmd_roots);
  int roots_n = 8;
  std::string roots_out;
  cmd_roots->add_option("--n", roots_n, "degree n");
  cmd_roots->add_option("--out", roots_out, "CSV output path (default: stdout)");

  // ---- disc-table
  auto* cmd_disc = app.add_subcommand("disc-table", "Delta_n table as CSV");
  FamilyOpts dopt;
  dopt.attach(cmd_disc);
  int disc_n = 8;
  std::string disc_out;
  cmd_disc->add_option("--n-max", disc_n, "maximal n");
  cmd_disc->add_option("--out", disc_out, "CSV output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*cmd_build) {
    return run_guarded([&] {
      opuc::OPUCSystem sys;
      if (bopt.family == "custom") {
        if (build_moments.empty())
          throw opuc::DomainError("family custom requires --moments FILE");
        std::ifstream in(build_moments);
        if (!in) throw opuc::IoError("cannot open " + build_moments);
        std::stringstream buf;
        buf << in.rdbuf();
        const opuc::WeightSpec w = opuc::parse_custom_moments_json(buf.str());
        const int N = std::min<int>(build_n, static_cast<int>(w.custom.size()) - 1);
        sys = opuc::system_from_moments(opuc::trig_moments(w, static_cast<int>(w.custom.size()) - 1), N, w);
      } else {
        sys = opuc::make_system(bopt.family, bopt.params(), build_n, build_route);
      }
      std::printf("%-4s %-24s %-26s %-26s\n", "n", "kappa_n", "phi_n(0)", "l_n");
      for (int n = 0; n <= sys.N; ++n)
        std::printf("%-4d %-24.16g %12.9g %+12.9gi %12.9g %+12.9gi\n", n, sys.kappa[n],
                    sys.phi0[n].real(), sys.phi0[n].imag(), sys.ell[n].real(),
                    sys.ell[n].imag());
      if (!build_out.empty()) opuc::write_file_atomic(build_out, opuc::system_to_json(sys));
      return kExitPass;
    });
  }

  if (*cmd_verify) {
    return run_guarded([&] {
      opuc::SuiteRequest req{verify_suite, vopt.family, vopt.params(), verify_n};
      opuc::VerificationReport rep = opuc::run_suite(req);
      apply_tolerance_overrides(rep, verify_tols);
      opuc::print_report(std::cout, rep);
      if (!verify_out.empty())
        opuc::write_file_atomic(verify_out, opuc::report_to_json(rep));
      return rep.all_pass() ? kExitPass : kExitNumerical;
    });
  }

  if (*cmd_all) {
    return run_guarded([&] {
      opuc::Config cfg =
          all_config.empty() ? opuc::default_config() : opuc::parse_config_file(all_config);
      const std::string hash = opuc::config_hash(cfg);
      auto reports = opuc::run_report_all(cfg);
      opuc::print_summary(std::cout, reports);
      if (!all_outdir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(all_outdir);
        opuc::write_file_atomic((fs::path(all_outdir) / "report.json").string(),
                                opuc::aggregate_to_json(reports, hash));
        int idx = 0;
        for (const auto& r : reports) {
          std::ostringstream dat;
          opuc::write_residual_dat(dat, r);
          opuc::write_file_atomic((fs::path(all_outdir) /
                                   ("residuals-" + std::to_string(idx++) + "-" +
                                    r.suite_name + ".dat"))
                                      .string(),
                                  dat.str());
        }
      }
      for (const auto& r : reports)
        if (!r.all_pass()) return kExitNumerical;
      return kExitPass;
    });
  }

  if (*cmd_explain) {
    return run_guarded([&] {
      if (explain_suite.empty()) {
        for (const auto& s : opuc::suite_registry())
          std::printf("%-20s %s\n", s.name.c_str(), s.anchor.c_str());
        return kExitPass;
      }
      const opuc::SuiteInfo* info = opuc::find_suite(explain_suite);
      if (!info) throw opuc::DomainError("unknown suite: " + explain_suite);
      std::printf("suite:  %s\nanchor: %s\nchecks: %s\n", info->name.c_str(),
                  info->anchor.c_str(), info->description.c_str());
      return kExitPass;
    });
  }

  if (*cmd_roots) {
    return run_guarded([&] {
      auto sys = opuc::make_system(ropt.family, ropt.params(), roots_n, "closed");
      auto rs = opuc::roots(sys.phi[roots_n]);
      if (roots_out.empty()) {
        opuc::write_roots_csv(std::cout, rs);
      } else {
        std::ostringstream os;
        opuc::write_roots_csv(os, rs);
        opuc::write_file_atomic(roots_out, os.str());
      }
      return kExitPass;
    });
  }

  if (*cmd_disc) {
    return run_guarded([&] {
      const std::string csv = opuc::discriminant_csv(dopt.family, dopt.params(), disc_n);
      if (disc_out.empty())
        std::cout << csv;
      else
        opuc::write_file_atomic(disc_out, csv);
      return kExitPass;
    });
  }

  return kExitPass;
}
