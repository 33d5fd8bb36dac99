#include "tempohom/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <thread>

#include "tempohom/cell.hpp"
#include "tempohom/errors.hpp"

namespace tempohom {
namespace {

constexpr double kRoundOff = 1e-10;

double packet(const PacketParams& p, double x) {
  return std::exp(-x * x / (2.0 * p.T0 * p.T0)) * std::cos(p.omega0 * x);
}

void check_guards(const StudyConfig& cfg) {
  if (cfg.etas.empty()) throw InsufficientPoints("empty eta sweep");
  for (double eta : cfg.etas) {
    if (!(eta > 0.0)) throw GuardViolation("eta must be positive");
    if (cfg.dt > eta / 16.0 * (1.0 + 1e-12)) {
      throw GuardViolation("dt = " + std::to_string(cfg.dt) + " exceeds eta/16 for eta = " + std::to_string(eta));
    }
    if (cfg.packet.omega0 * eta > 0.1) {
      throw GuardViolation("omega0 * eta exceeds 0.1 for eta = " + std::to_string(eta));
    }
  }
}

std::vector<double> run_one_eta(const StudyConfig& cfg, std::shared_ptr<const CellSolution> cells, double eta,
                                const InitialData& data, const SpectralGrid& grid) {
  int components = 1;
  bool need_macro2 = false;
  for (auto a : cfg.orders) {
    components = std::max(components, macro_components(a));
    need_macro2 = need_macro2 || a == Approximant::Macro2;
  }
  const auto& k = cells->coefficients();
  Integrator full(full_wave_problem(cfg.which, cfg.bp, eta, data, grid, cfg.T, cfg.dt));
  Integrator corr(corrector_problem(cfg.which, k, data, components, grid, cfg.T, cfg.dt));
  std::unique_ptr<Integrator> mac;
  if (need_macro2) mac = std::make_unique<Integrator>(macro2_problem(cfg.which, k, eta, data, grid, cfg.T, cfg.dt));
  MicroClosures micro(cfg.which, cells, grid);

  const std::size_t steps = full.total_steps();
  std::vector<L2TimeNorm> norms(cfg.orders.size(), L2TimeNorm(grid, cfg.dt, steps));
  for (std::size_t n = 0;; ++n) {
    const SolverState* m2 = mac ? &mac->state() : nullptr;
    for (std::size_t i = 0; i < cfg.orders.size(); ++i) {
      const ComplexField approx = approximant(cfg.orders[i], micro, eta, corr.state(), m2);
      norms[i].add(n, full.state().u_hat[0], approx);
    }
    if (full.done()) break;
    full.step();
    corr.step();
    if (mac) mac->step();
  }
  std::vector<double> errors;
  for (const auto& nrm : norms) errors.push_back(nrm.value());
  return errors;
}

}  // namespace

InitialData packet_init(const PacketParams& params, const SpectralGrid& grid) {
  if (!(params.T0 > 0.0) || !(params.omega0 >= 0.0)) throw std::invalid_argument("invalid packet parameters");
  const double half = 0.5 * grid.length();
  const double edge = std::max(std::abs(packet(params, -half)), std::abs(packet(params, half)));
  if (edge > 1e-14) throw BoundaryLeak("packet value at the boundary is " + std::to_string(edge));
  RealField v0(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v0[i] = packet(params, grid.node(i));
  InitialData d;
  d.v0 = grid.to_spectral(v0);
  d.v1 = gradient(d.v0, grid);
  for (auto& c : d.v1) c = -c;
  return d;
}

L2TimeNorm::L2TimeNorm(SpectralGrid grid, double dt, std::size_t steps)
    : grid_(std::move(grid)), dt_(dt), steps_(steps) {}

void L2TimeNorm::add(std::size_t n, std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw GridMismatch("fields differ in length");
  ComplexField d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
  add(n, d);
}

void L2TimeNorm::add(std::size_t n, std::span<const Complex> diff) {
  if (n > steps_) throw GridMismatch("step index beyond the time grid");
  const double w = (n == 0 || n == steps_) ? 0.5 * dt_ : dt_;
  const double nrm = grid_.l2_norm(diff);
  sum_ += w * nrm * nrm;
}

double L2TimeNorm::value() const { return std::sqrt(sum_); }

double l2t_l2x_error(const FieldSeries& a, const FieldSeries& b) {
  if (!(a.grid == b.grid) || a.dt != b.dt || a.values.size() != b.values.size()) {
    throw GridMismatch("trajectories are not on the same grid");
  }
  if (a.values.empty()) return 0.0;
  L2TimeNorm norm(a.grid, a.dt, a.values.size() - 1);
  for (std::size_t n = 0; n < a.values.size(); ++n) norm.add(n, a.values[n], b.values[n]);
  return norm.value();
}

double estimate_rate(std::span<const double> etas, std::span<const double> errors) {
  if (etas.size() != errors.size()) throw InsufficientPoints("etas and errors differ in length");
  if (etas.size() < 3) throw InsufficientPoints("need at least 3 points, got " + std::to_string(etas.size()));
  const std::size_t n = etas.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(etas[i] > 0.0) || !(errors[i] > 0.0)) throw InsufficientPoints("non-positive point in rate fit");
    mx += std::log(etas[i]);
    my += std::log(errors[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(etas[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InsufficientPoints("all etas coincide");
  return sxy / sxx;
}

RateFit fit_rate(std::span<const double> etas, std::span<const double> errors) {
  if (etas.size() != errors.size()) throw InsufficientPoints("etas and errors differ in length");
  std::vector<std::size_t> idx(etas.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return etas[a] > etas[b]; });
  RateFit fit;
  std::size_t first = 0;
  if (idx.size() >= 4 && errors[idx[0]] < errors[idx[1]]) {
    fit.excluded_coarsest = true;
    first = 1;
  }
  std::vector<double> x, y;
  for (std::size_t i = first; i < idx.size(); ++i) {
    x.push_back(etas[idx[i]]);
    y.push_back(errors[idx[i]]);
  }
  fit.points = x.size();
  fit.slope = estimate_rate(x, y);
  return fit;
}

std::vector<double> etas_from_ells(std::span<const int> ells, double T) {
  std::vector<double> etas;
  for (int l : ells) {
    if (l <= 0) throw std::invalid_argument("ell must be positive");
    etas.push_back(T / l);
  }
  return etas;
}

StudyConfig desk_config(CaseTag which, const PermittivityBlueprint& bp) {
  StudyConfig cfg;
  cfg.which = which;
  cfg.bp = bp;
  const int ells[] = {10, 20, 40, 80};
  cfg.etas = etas_from_ells(ells, cfg.T);
  cfg.dt = std::ldexp(cfg.T, -11);
  cfg.orders = {Approximant::Order0,     Approximant::Order1,     Approximant::Order2,
                Approximant::Macro2,     Approximant::Macro1Only, Approximant::Macro2Only};
  return cfg;
}

StudyConfig full_scale_config(CaseTag which, const PermittivityBlueprint& bp) {
  StudyConfig cfg = desk_config(which, bp);
  const int ells[] = {10, 20, 40, 80, 150, 300};
  cfg.etas = etas_from_ells(ells, cfg.T);
  cfg.dt = std::ldexp(cfg.T, -13);
  return cfg;
}

const OrderResult& ErrorReport::at(Approximant a) const {
  for (const auto& r : results) {
    if (r.order == a) return r;
  }
  throw OrderUnavailable("order " + to_string(a) + " is not in the report");
}

ErrorReport convergence_study(const StudyConfig& cfg) {
  check_guards(cfg);
  if (cfg.orders.empty()) throw OrderUnavailable("no orders requested");
  const SpectralGrid grid(cfg.N);
  const InitialData data = packet_init(cfg.packet, grid);
  auto cells = std::make_shared<const CellSolution>(cfg.bp);

  const std::size_t n_eta = cfg.etas.size();
  std::vector<std::vector<double>> errors(n_eta);
  std::vector<std::exception_ptr> failures(n_eta);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n_eta;) {
      try {
        errors[i] = run_one_eta(cfg, cells, cfg.etas[i], data, grid);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_eta));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  ErrorReport report;
  report.which = cfg.which;
  report.blueprint = cfg.bp.describe();
  report.etas = cfg.etas;
  double largest = 0.0;
  for (const auto& row : errors) {
    for (double e : row) largest = std::max(largest, e);
  }
  report.degenerate = largest < kRoundOff;
  for (std::size_t o = 0; o < cfg.orders.size(); ++o) {
    OrderResult r;
    r.order = cfg.orders[o];
    for (std::size_t i = 0; i < n_eta; ++i) r.errors.push_back(errors[i][o]);
    if (report.degenerate || n_eta < 3) {
      r.fit.slope = std::numeric_limits<double>::quiet_NaN();
    } else {
      r.fit = fit_rate(report.etas, r.errors);
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

void write_csv(const ErrorReport& report, std::ostream& out) {
  char buf[64];
  auto num = [&](double v) -> std::string {
    if (std::isnan(v)) return "NA";
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  const std::string name = to_string(report.which);
  out << "case,eta,order,error,slope_fitted\n";
  for (const auto& r : report.results) {
    for (std::size_t i = 0; i < report.etas.size(); ++i) {
      out << name << ',' << num(report.etas[i]) << ',' << to_string(r.order) << ',' << num(r.errors[i]) << ",NA\n";
    }
  }
  for (const auto& r : report.results) {
    out << name << ",NA," << to_string(r.order) << ",NA," << num(r.fit.slope) << '\n';
  }
}

bool check_report(const ErrorReport& report, std::vector<std::string>& failures) {
  const std::size_t before = failures.size();
  if (report.degenerate) {
    failures.push_back("degenerate sweep: errors at round-off, slopes undefined");
    return false;
  }
  for (const auto& r : report.results) {
    double lo = -1e300, hi = 1e300;
    switch (r.order) {
      case Approximant::Order0:
        lo = 0.7, hi = 1.3;
        break;
      case Approximant::Order1:
        lo = 1.7, hi = 2.3;
        break;
      case Approximant::Order2:
      case Approximant::Macro2:
        lo = 2.6, hi = 3.4;
        break;
      case Approximant::Macro1Only:
      case Approximant::Macro2Only:
        // In the electric case the first micro part vanishes, so mac1 equals
        // order 1 and no first-order cap applies.
        if (report.which == CaseTag::Magnetic) hi = 1.5;
        break;
    }
    const double s = r.fit.slope;
    if (!(s >= lo && s <= hi)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "order %s: slope %.3f outside [%g, %g]", to_string(r.order).c_str(), s,
                    lo, hi);
      failures.push_back(buf);
    }
  }
  return failures.size() == before;
}

double left_going_fraction(CaseTag which, const PermittivityBlueprint& bp, double eta, const PacketParams& packet,
                           const SpectralGrid& grid, double T, double dt) {
  const InitialData data = packet_init(packet, grid);
  const SolverState s = solve(full_wave_problem(which, bp, eta, data, grid, T, dt));
  const double eh = eps_hom(bp);
  const double c = 1.0 / std::sqrt(eh);
  double left = 0.0, total = 0.0;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    if (j == grid.size() / 2) continue;
    const double k = grid.wavenumber(j);
    const Complex u = s.u_hat[0][j];
    // The momentum is the slowly varying variable in the magnetic case.
    const Complex ut = which == CaseTag::Electric ? s.w_hat[0][j] : s.w_hat[0][j] / eh;
    const Complex q = ut / Complex{0.0, k * c};
    const Complex l = 0.5 * (u + q), r = 0.5 * (u - q);
    left += k * k * std::norm(l);
    total += k * k * (std::norm(l) + std::norm(r));
  }
  return total > 0.0 ? left / total : 0.0;
}

FieldContrast e_d_contrast(const PermittivityBlueprint& bp, double eta, const PacketParams& packet,
                           const SpectralGrid& grid, double T, double dt) {
  const InitialData data = packet_init(packet, grid);
  const WaveProblem p = full_wave_problem(CaseTag::Electric, bp, eta, data, grid, T, dt);
  std::vector<RealField> d;
  std::vector<double> times;
  solve(p, [&](const SolverState& s) {
    if (s.t >= T - eta - 1e-12) {
      d.push_back(grid.to_physical(s.u_hat[0]));
      times.push_back(s.t);
    }
  });
  const std::vector<RealField> e = recover_E_from_D(d, times, bp, eta);
  auto oscillation = [&](const std::vector<RealField>& series) {
    std::vector<double> peaks;
    for (const auto& f : series) {
      double m = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.node(i) > 0.0) m = std::max(m, std::abs(f[i]));
      }
      peaks.push_back(m);
    }
    const auto [lo, hi] = std::minmax_element(peaks.begin(), peaks.end());
    const double mean = std::accumulate(peaks.begin(), peaks.end(), 0.0) / static_cast<double>(peaks.size());
    return (*hi - *lo) / mean;
  };
  return {oscillation(d), oscillation(e)};
}

}  // namespace tempohom
