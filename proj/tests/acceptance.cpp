// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>

#include "tempohom/cell.hpp"
#include "tempohom/harness.hpp"
#include "tempohom/homogenize.hpp"
#include "tempohom/spectral.hpp"

using namespace tempohom;

namespace {

const double pi = std::numbers::pi;
int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0, double e = 0, double g = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d, e, g);
  return buf;
}

void coefficients() {
  const auto k = effective_coefficients(PermittivityBlueprint::sine_inverse());
  const double dh = std::abs(k.eps_hom - 0.5);
  const double dc = std::abs(k.eps_cor + 1.0 / (16 * pi * pi));
  report(1, dh <= 1e-12 && dc <= 1e-10,
         fmt("sine_inverse eps_hom = %.15g (|err| %.1e), eps_cor = %.15g (|err| %.1e)", k.eps_hom, dh, k.eps_cor, dc));
}

void identities() {
  bool ok = true;
  std::string msg;
  for (const auto& bp : {PermittivityBlueprint::sine_inverse(), PermittivityBlueprint::cosine_inverse()}) {
    const IdentityReport r = verify_identities(bp, 4096);
    ok = ok && r.max_residual() <= 1e-8 && r.residuals.size() >= 17;
    msg += bp.describe() + fmt(" max residual %.1e", r.max_residual()) + " (" + std::to_string(r.residuals.size()) +
           " identities); ";
  }
  report(2, ok, "M = 4096: " + msg);
}

void degenerate() {
  const auto bp = PermittivityBlueprint::cosine_inverse();
  const CellSolution cells(bp);
  const SpectralGrid grid(64);
  const double T = 0.4;
  const auto traj = solve_corrector1(CaseTag::Electric, cells, packet_init({}, grid), grid, T, std::ldexp(T, -11));
  double u1 = 0.0;
  for (const auto& s : traj) {
    for (double v : grid.to_physical(s.u_hat[1])) u1 = std::max(u1, std::abs(v));
  }
  const double chi0 = std::abs(cells.coefficients().chi0);
  report(3, chi0 <= 1e-12 && u1 <= 1e-10,
         fmt("cosine_inverse |chi0| = %.1e, max |ubar1| over [0, 0.4] <= %.1e", chi0, u1));
}

void solver_order() {
  // u = sin(k x) cos(w t), a u'' = Lap u
  const SpectralGrid grid(64);
  const double T = 0.4, k = 16 * pi, a = 1.5, w = k / std::sqrt(a);
  RealField u0(64), exact(64);
  for (std::size_t i = 0; i < 64; ++i) {
    u0[i] = std::sin(k * grid.node(i));
    exact[i] = u0[i] * std::cos(w * T);
  }
  std::vector<double> x, y;
  double drift = 0.0;
  for (int e = 6; e <= 10; ++e) {
    WaveProblem p;
    p.form = WaveForm::ElectricType;
    p.coefficient = TimeCoefficient::constant(a);
    p.fields.push_back({0.0, {}, grid.to_spectral(u0), ComplexField(64)});
    p.T = T;
    p.dt = std::ldexp(T, -e);
    auto energy = [&](const SolverState& s) {
      double en = 0.0;
      for (std::size_t j = 0; j < 64; ++j) {
        en += a * std::norm(s.w_hat[0][j]) + std::pow(grid.wavenumber(j), 2) * std::norm(s.u_hat[0][j]);
      }
      return en;
    };
    const double e0 = energy(initial_state(p));
    const SolverState end = solve(p, [&](const SolverState& s) {
      drift = std::max(drift, std::abs(energy(s) - e0) / e0);
    });
    const RealField u = grid.to_physical(end.u_hat[0]);
    double err = 0.0;
    for (std::size_t i = 0; i < 64; ++i) err = std::max(err, std::abs(u[i] - exact[i]));
    x.push_back(p.dt);
    y.push_back(err);
  }
  const double slope = estimate_rate(x, y);
  report(4, std::abs(slope - 4.0) <= 0.2 && drift <= 1e-8,
         fmt("temporal slope %.3f over dt = 2^-6..2^-10 T, relative energy drift %.1e", slope, drift));
}

ErrorReport sweep(CaseTag c) {
  StudyConfig cfg = desk_config(c, PermittivityBlueprint::sine_inverse());
  return convergence_study(cfg);
}

void convergence(const ErrorReport& e, const ErrorReport& m) {
  auto in = [](double s, double lo, double hi) { return s >= lo && s <= hi; };
  bool ok = true;
  std::string msg;
  for (const ErrorReport* r : {&e, &m}) {
    const double s0 = r->at(Approximant::Order0).fit.slope;
    const double s1 = r->at(Approximant::Order1).fit.slope;
    const double s2 = r->at(Approximant::Order2).fit.slope;
    const double sm = r->at(Approximant::Macro2).fit.slope;
    ok = ok && in(s0, 0.7, 1.3) && in(s1, 1.7, 2.3) && in(s2, 2.6, 3.4) && in(sm, 2.6, 3.4);
    msg += to_string(r->which) + fmt(" slopes 0:%.2f 1:%.2f 2:%.2f macro2:%.2f; ", s0, s1, s2, sm);
    for (const auto& o : r->results) {
      if (o.fit.excluded_coarsest) msg += "(" + to_string(o.order) + " excludes coarsest eta) ";
    }
  }
  report(5, ok, msg + "l = 10,20,40,80, N = 64, dt = 2^-11 T");
}

void macroscopic_only(const ErrorReport& e, const ErrorReport& m) {
  const double m1 = m.at(Approximant::Macro1Only).fit.slope;
  const double m2 = m.at(Approximant::Macro2Only).fit.slope;
  const double e1 = e.at(Approximant::Macro1Only).fit.slope;
  const double e2 = e.at(Approximant::Macro2Only).fit.slope;
  // The electric first micro part vanishes identically, so there u(1) is the
  // full order-1 approximant and is gated by criterion 5 instead.
  report(6, m1 <= 1.5 && m2 <= 1.5,
         fmt("magnetic u(1) slope %.2f, u(2) slope %.2f; electric (u(1) equals order 1 there, not gated) "
             "%.2f, %.2f",
             m1, m2, e1, e2));
}

void constant_coefficient() {
  const auto bp = PermittivityBlueprint::constant(2.0);
  auto cells = std::make_shared<const CellSolution>(bp);
  const SpectralGrid grid(64);
  const double T = 0.4, dt = std::ldexp(T, -11), eta = 0.02;
  const InitialData data = packet_init({}, grid);
  double err = 0.0, corr = 0.0;
  for (CaseTag c : {CaseTag::Electric, CaseTag::Magnetic}) {
    Integrator full(full_wave_problem(c, bp, eta, data, grid, T, dt));
    const HomogenizedBundle b = build_bundle(c, cells, eta, data, grid, T, dt, 3, true);
    L2TimeNorm norm(grid, dt, full.total_steps());
    const MicroClosures micro(c, cells, grid);
    for (std::size_t n = 0;; ++n) {
      norm.add(n, full.state().u_hat[0], b.macro[n].u_hat[0]);
      const auto& s = b.macro[n];
      const double tau = s.t / eta;
      corr = std::max({corr, grid.l2_norm(s.u_hat[1]), grid.l2_norm(s.u_hat[2]),
                       grid.l2_norm(micro.first(s, tau)), grid.l2_norm(micro.second(s, tau))});
      if (full.done()) break;
      full.step();
    }
    err = std::max(err, norm.value());
  }
  report(7, err <= 1e-8 && corr <= 1e-10,
         fmt("constant:2 ||u_eta - u0|| = %.1e, largest corrector %.1e (both cases)", err, corr));
}

void temporal_reflection() {
  const SpectralGrid grid(64);
  const double T = 0.4, eta = std::ldexp(T, -4), dt = std::ldexp(T, -11);
  const auto sine = PermittivityBlueprint::sine_inverse();
  const auto flat = PermittivityBlueprint::constant(1.0);
  const double fe = left_going_fraction(CaseTag::Electric, sine, eta, {}, grid, T, dt);
  const double fm = left_going_fraction(CaseTag::Magnetic, sine, eta, {}, grid, T, dt);
  const double ce = left_going_fraction(CaseTag::Electric, flat, eta, {}, grid, T, dt);
  const double cm = left_going_fraction(CaseTag::Magnetic, flat, eta, {}, grid, T, dt);
  report(8, fe > 0.01 && fm > 0.01 && ce < 1e-6 && cm < 1e-6,
         fmt("left-going energy fraction at t = T: electric %.3f, magnetic %.3f; constant:1 %.1e, %.1e", fe, fm, ce,
             cm));
}

void e_d() {
  const SpectralGrid grid(256);
  const double T = 0.4, eta = 0.025, dt = std::ldexp(T, -11);
  const FieldContrast c = e_d_contrast(PermittivityBlueprint::sine_inverse(), eta, {0.05, 0.01}, grid, T, dt);
  report(9, c.ratio() >= 5.0,
         fmt("eta = 0.025: peak oscillation over one period E %.3f, D %.2e, ratio %.1f", c.e_oscillation,
             c.d_oscillation, c.ratio()));
}

}  // namespace

int main() {
  coefficients();
  identities();
  degenerate();
  solver_order();
  const ErrorReport e = sweep(CaseTag::Electric);
  const ErrorReport m = sweep(CaseTag::Magnetic);
  convergence(e, m);
  macroscopic_only(e, m);
  constant_coefficient();
  temporal_reflection();
  e_d();
  return failures;
}
