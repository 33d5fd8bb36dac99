// Command-line front end: coefficient tables, single homogenized runs and
// eta-convergence sweeps.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "tempohom/cell.hpp"
#include "tempohom/errors.hpp"
#include "tempohom/harness.hpp"
#include "tempohom/homogenize.hpp"

using namespace tempohom;

namespace {

constexpr int kExitError = 1;
constexpr int kExitGuard = 2;
constexpr int kExitCheck = 3;

// Plain `key = value` files name converge options without a section header.
class ConvergeConfig : public CLI::ConfigINI {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    auto items = CLI::ConfigINI::from_config(in);
    for (auto& item : items) {
      if (item.parents.empty() && item.name != "++" && item.name != "--") item.parents = {"converge"};
    }
    return items;
  }
};

int cmd_coeffs(const std::string& blueprint, std::size_t grid, bool csv) {
  const CellSolution cells(PermittivityBlueprint::parse(blueprint), grid);
  const auto& k = cells.coefficients();
  const IdentityReport report = verify_identities(cells);
  const std::pair<const char*, double> rows[] = {{"eps_hom", k.eps_hom}, {"eps_cor", k.eps_cor},
                                                 {"chi0", k.chi0},       {"theta0", k.theta0},
                                                 {"kappa", k.kappa},     {"max_identity_residual", report.max_residual()}};
  if (csv) std::printf("name,value\n");
  for (const auto& [name, v] : rows) std::printf(csv ? "%s,%.17g\n" : "%-22s %.17g\n", name, v);
  if (!csv && report.degenerate) std::printf("degenerate: chi0 = 0, the electric first corrector vanishes\n");
  return 0;
}

struct RunOptions {
  std::string which = "electric";
  std::string blueprint = "sine_inverse";
  double eta = 0.02;
  std::string order = "2";
  std::size_t N = 64;
  double dt = 0.0;
  double T = 0.4;
  std::size_t dump_every = 0;
  std::string out = "dumps";
};

int cmd_run(const RunOptions& o) {
  const CaseTag which = parse_case(o.which);
  const auto bp = PermittivityBlueprint::parse(o.blueprint);
  const Approximant order = parse_approximant(o.order);
  const double dt = o.dt > 0.0 ? o.dt : std::ldexp(o.T, -11);
  const SpectralGrid grid(o.N);
  const InitialData data = packet_init(PacketParams{}, grid);
  auto cells = std::make_shared<const CellSolution>(bp);

  Integrator full(full_wave_problem(which, bp, o.eta, data, grid, o.T, dt));
  Integrator corr(corrector_problem(which, cells->coefficients(), data, 3, grid, o.T, dt));
  std::unique_ptr<Integrator> mac;
  if (order == Approximant::Macro2) {
    mac = std::make_unique<Integrator>(macro2_problem(which, cells->coefficients(), o.eta, data, grid, o.T, dt));
  }
  const MicroClosures micro(which, cells, grid);
  L2TimeNorm err(grid, dt, full.total_steps());
  if (o.dump_every > 0) std::filesystem::create_directories(o.out);

  auto dump = [&](const std::string& name, std::size_t n, double t, const ComplexField& f) {
    char file[64];
    std::snprintf(file, sizeof file, "%s_%06zu.dat", name.c_str(), n);
    write_field_dump((std::filesystem::path(o.out) / file).string(), grid, t, grid.to_physical(f));
  };

  for (std::size_t n = 0;; ++n) {
    const ComplexField u = approximant(order, micro, o.eta, corr.state(), mac ? &mac->state() : nullptr);
    err.add(n, full.state().u_hat[0], u);
    if (o.dump_every > 0 && (n % o.dump_every == 0 || full.done())) {
      const double t = full.state().t;
      dump("u", n, t, u);
      dump("full", n, t, full.state().u_hat[0]);
      dump("u0", n, t, corr.state().u_hat[0]);
      dump("ubar1", n, t, corr.state().u_hat[1]);
      dump("ubar2", n, t, corr.state().u_hat[2]);
    }
    if (full.done()) break;
    full.step();
    corr.step();
    if (mac) mac->step();
  }
  std::printf("case=%s blueprint=%s eta=%.17g order=%s steps=%zu l2t_l2x_error=%.17g\n", o.which.c_str(),
              bp.describe().c_str(), o.eta, o.order.c_str(), full.total_steps(), err.value());
  return 0;
}

struct ConvergeOptions {
  std::string which = "electric";
  std::string blueprint = "sine_inverse";
  std::vector<int> ells = {10, 20, 40, 80};
  std::vector<std::string> orders = {"0", "1", "2", "macro2"};
  std::size_t N = 64;
  int dt_frac = 11;
  double T = 0.4;
  std::string csv;
  bool paper_scale = false;
  bool check = false;
  unsigned threads = 0;
};

int cmd_converge(const ConvergeOptions& o) {
  const CaseTag which = parse_case(o.which);
  const auto bp = PermittivityBlueprint::parse(o.blueprint);
  StudyConfig cfg = o.paper_scale ? full_scale_config(which, bp) : desk_config(which, bp);
  cfg.N = o.N;
  cfg.threads = o.threads;
  if (o.paper_scale) {
    // same l values and dt / T at any final time
    const double scale = o.T / cfg.T;
    for (auto& eta : cfg.etas) eta *= scale;
    cfg.dt *= scale;
  } else {
    cfg.etas = etas_from_ells(o.ells, o.T);
    cfg.dt = std::ldexp(o.T, -o.dt_frac);
  }
  cfg.T = o.T;
  cfg.orders.clear();
  for (const auto& s : o.orders) cfg.orders.push_back(parse_approximant(s));

  const ErrorReport report = convergence_study(cfg);
  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) throw std::runtime_error("cannot write '" + o.csv + "'");
    write_csv(report, out);
  }
  write_csv(report, std::cout);
  for (const auto& r : report.results) {
    if (r.fit.excluded_coarsest) {
      std::cerr << "note: order " << to_string(r.order) << " slope excludes the coarsest eta (non-monotone)\n";
    }
  }
  if (report.degenerate) std::cerr << "note: degenerate sweep, all errors at round-off\n";
  if (o.check) {
    std::vector<std::string> failures;
    if (!check_report(report, failures)) {
      for (const auto& f : failures) std::cerr << "check failed: " << f << '\n';
      return kExitCheck;
    }
    std::cerr << "check passed\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogenization of wave propagation in time-modulated media"};
  app.require_subcommand(1);

  std::string coeffs_bp = "sine_inverse";
  std::size_t coeffs_grid = kDefaultCellGrid;
  bool coeffs_csv = false;
  auto* coeffs = app.add_subcommand("coeffs", "Effective coefficients and cell identity residuals");
  coeffs->add_option("--blueprint", coeffs_bp, "sine_inverse | cosine_inverse | constant:<c> | file:<path> | "
                                               "fourier_inverse:mean,a1,b1,...");
  coeffs->add_option("--grid", coeffs_grid, "Samples per period");
  coeffs->add_flag("--csv", coeffs_csv);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Solve one homogenized approximant next to the full wave");
  run->add_option("--case", ro.which)->check(CLI::IsMember({"electric", "magnetic"}));
  run->add_option("--blueprint", ro.blueprint);
  run->add_option("--eta", ro.eta);
  run->add_option("--order", ro.order)->check(CLI::IsMember({"0", "1", "2", "macro2", "mac1", "mac2"}));
  run->add_option("--N", ro.N);
  run->add_option("--dt", ro.dt, "Time step (default 2^-11 T)");
  run->add_option("--T", ro.T);
  run->add_option("--dump-every", ro.dump_every, "Dump every k steps (0: no dumps)");
  run->add_option("--out", ro.out, "Dump directory");

  ConvergeOptions co;
  auto* conv = app.add_subcommand("converge", "Error sweep over eta = T / l with fitted slopes");
  app.set_config("--config", "", "key = value file of converge options; flags override it");
  app.config_formatter(std::make_shared<ConvergeConfig>());
  conv->fallthrough();
  conv->add_option("--case", co.which)->check(CLI::IsMember({"electric", "magnetic"}));
  conv->add_option("--blueprint", co.blueprint);
  conv->add_option("--ells", co.ells, "Comma-separated l values")->delimiter(',');
  conv->add_option("--orders", co.orders, "Comma-separated subset of 0,1,2,macro2,mac1,mac2")->delimiter(',');
  conv->add_option("--N", co.N);
  conv->add_option("--dt-frac", co.dt_frac, "dt = 2^-k T");
  conv->add_option("--T", co.T);
  conv->add_option("--csv", co.csv);
  conv->add_option("--threads", co.threads);
  conv->add_flag("--paper-scale", co.paper_scale, "l up to 300, dt = 2^-13 T");
  conv->add_flag("--check", co.check, "Exit 3 unless the slopes land in their bands");

  CLI11_PARSE(app, argc, argv);
  try {
    if (coeffs->parsed()) return cmd_coeffs(coeffs_bp, coeffs_grid, coeffs_csv);
    if (run->parsed()) return cmd_run(ro);
    if (conv->parsed()) return cmd_converge(co);
  } catch (const GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
