#include "tempohom/homogenize.hpp"

#include "tempohom/errors.hpp"

namespace tempohom {
namespace {

ComplexField scaled(const ComplexField& f, double s) {
  ComplexField out(f);
  for (auto& c : out) c *= s;
  return out;
}

ComplexField lap(const ComplexField& f, const SpectralGrid& g) { return laplacian(f, g); }

// a += s * b
void axpy(ComplexField& a, double s, const ComplexField& b) {
  for (std::size_t j = 0; j < a.size(); ++j) a[j] += s * b[j];
}

void check_data(const InitialData& data, const SpectralGrid& grid) {
  if (data.v0.size() != grid.size() || data.v1.size() != grid.size()) {
    throw GridError("initial data does not match the grid");
  }
}

void require_fields(const SolverState& s, std::size_t n, const char* what) {
  if (s.u_hat.size() < n) throw OrderUnavailable(std::string(what) + " needs a component that was not solved");
}

Trajectory record(const WaveProblem& p) {
  Trajectory out;
  out.reserve(p.num_steps() + 1);
  solve(p, [&](const SolverState& s) { out.push_back(s); });
  return out;
}

}  // namespace

std::string to_string(CaseTag c) { return c == CaseTag::Electric ? "electric" : "magnetic"; }

CaseTag parse_case(std::string_view s) {
  if (s == "electric") return CaseTag::Electric;
  if (s == "magnetic") return CaseTag::Magnetic;
  throw std::invalid_argument("unknown case '" + std::string(s) + "'");
}

WaveForm wave_form(CaseTag c) { return c == CaseTag::Electric ? WaveForm::ElectricType : WaveForm::MagneticType; }

std::string to_string(Approximant a) {
  switch (a) {
    case Approximant::Order0:
      return "0";
    case Approximant::Order1:
      return "1";
    case Approximant::Order2:
      return "2";
    case Approximant::Macro2:
      return "macro2";
    case Approximant::Macro1Only:
      return "mac1";
    case Approximant::Macro2Only:
      return "mac2";
  }
  return "?";
}

Approximant parse_approximant(std::string_view s) {
  for (auto a : {Approximant::Order0, Approximant::Order1, Approximant::Order2, Approximant::Macro2,
                 Approximant::Macro1Only, Approximant::Macro2Only}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown order '" + std::string(s) + "'");
}

int macro_components(Approximant a) {
  switch (a) {
    case Approximant::Order0:
      return 1;
    case Approximant::Order1:
    case Approximant::Macro1Only:
    case Approximant::Macro2:
      return 2;
    case Approximant::Order2:
    case Approximant::Macro2Only:
      return 3;
  }
  return 3;
}

WaveProblem full_wave_problem(CaseTag c, const PermittivityBlueprint& bp, double eta, const InitialData& data,
                              const SpectralGrid& grid, double T, double dt) {
  check_data(data, grid);
  WaveProblem p;
  p.form = wave_form(c);
  p.coefficient = bp.is_constant() ? TimeCoefficient::constant(bp(0.0)) : TimeCoefficient::modulated(bp, eta);
  p.fields.push_back({0.0, {}, data.v0, data.v1});
  p.grid = grid;
  p.T = T;
  p.dt = dt;
  return p;
}

WaveProblem corrector_problem(CaseTag c, const EffectiveCoefficients& k, const InitialData& data, int components,
                              const SpectralGrid& grid, double T, double dt) {
  check_data(data, grid);
  if (components < 1 || components > 3) throw std::invalid_argument("corrector system has 1 to 3 components");
  const double eh = k.eps_hom;
  const ComplexField lv0 = lap(data.v0, grid);
  const ComplexField lv1 = lap(data.v1, grid);
  const ComplexField zero(grid.size());

  WaveProblem p;
  p.form = wave_form(c);
  p.coefficient = TimeCoefficient::constant(eh);
  p.grid = grid;
  p.T = T;
  p.dt = dt;
  p.fields.push_back({0.0, {}, data.v0, data.v1});
  if (c == CaseTag::Electric) {
    if (components >= 2) p.fields.push_back({0.0, {}, zero, scaled(lv0, -k.chi0 / eh)});
    if (components >= 3) {
      p.fields.push_back({0.0, {{0, k.eps_cor}}, scaled(lv0, -k.theta0 / eh), scaled(lv1, k.theta0 / eh)});
    }
  } else {
    if (components >= 2) p.fields.push_back({0.0, {}, scaled(data.v1, -k.chi0 / eh), zero});
    if (components >= 3) {
      p.fields.push_back({0.0, {{0, k.eps_cor}}, scaled(lv0, k.theta0 / eh), scaled(lv1, k.kappa)});
    }
  }
  return p;
}

WaveProblem macro2_problem(CaseTag c, const EffectiveCoefficients& k, double eta, const InitialData& data,
                           const SpectralGrid& grid, double T, double dt) {
  check_data(data, grid);
  const double eh = k.eps_hom;
  const ComplexField lv0 = lap(data.v0, grid);
  const ComplexField lv1 = lap(data.v1, grid);
  ComplexField u = data.v0, w = data.v1;
  if (c == CaseTag::Electric) {
    axpy(u, -eta * eta * k.theta0 / eh, lv0);
    axpy(w, -eta * k.chi0 / eh, lv0);
    axpy(w, eta * eta * k.theta0 / eh, lv1);
  } else {
    axpy(u, -eta * k.chi0 / eh, data.v1);
    axpy(u, eta * eta * k.theta0 / eh, lv0);
    axpy(w, eta * eta * k.kappa, lv1);
  }
  WaveProblem p;
  p.form = wave_form(c);
  p.coefficient = TimeCoefficient::constant(eh);
  p.fields.push_back({eta * eta * k.eps_cor, {}, std::move(u), std::move(w)});
  p.grid = grid;
  p.T = T;
  p.dt = dt;
  return p;
}

Trajectory solve_effective(CaseTag c, const CellSolution& cells, const InitialData& data, const SpectralGrid& grid,
                           double T, double dt) {
  return record(corrector_problem(c, cells.coefficients(), data, 1, grid, T, dt));
}

Trajectory solve_corrector1(CaseTag c, const CellSolution& cells, const InitialData& data, const SpectralGrid& grid,
                            double T, double dt) {
  return record(corrector_problem(c, cells.coefficients(), data, 2, grid, T, dt));
}

Trajectory solve_corrector2(CaseTag c, const CellSolution& cells, const InitialData& data, const SpectralGrid& grid,
                            double T, double dt) {
  return record(corrector_problem(c, cells.coefficients(), data, 3, grid, T, dt));
}

Trajectory solve_macroscopic2(CaseTag c, const CellSolution& cells, double eta, const InitialData& data,
                              const SpectralGrid& grid, double T, double dt) {
  return record(macro2_problem(c, cells.coefficients(), eta, data, grid, T, dt));
}

MicroClosures::MicroClosures(CaseTag c, std::shared_ptr<const CellSolution> cells, SpectralGrid grid)
    : case_(c), cells_(std::move(cells)), grid_(std::move(grid)) {}

ComplexField MicroClosures::time_derivative(const SolverState& s, std::size_t i) const {
  require_fields(s, i + 1, "time derivative");
  if (case_ == CaseTag::Electric) return s.w_hat[i];
  return scaled(s.w_hat[i], 1.0 / cells_->coefficients().eps_hom);
}

ComplexField MicroClosures::first(const SolverState& s, double tau) const {
  require_fields(s, 1, "first micro part");
  if (case_ == CaseTag::Electric) return ComplexField(grid_.size());
  return scaled(time_derivative(s, 0), cells_->chi()(tau));
}

ComplexField MicroClosures::second(const SolverState& s, double tau) const {
  const double eh = cells_->coefficients().eps_hom;
  if (case_ == CaseTag::Electric) {
    require_fields(s, 1, "second micro part");
    return scaled(lap(s.u_hat[0], grid_), cells_->theta()(tau) / eh);
  }
  require_fields(s, 2, "second micro part");
  ComplexField out = scaled(lap(s.u_hat[0], grid_), cells_->xi()(tau) / eh);
  axpy(out, cells_->chi()(tau), time_derivative(s, 1));
  return out;
}

ComplexField approximant(Approximant a, const MicroClosures& micro, double eta, const SolverState& corr,
                         const SolverState* macro2) {
  require_fields(corr, static_cast<std::size_t>(macro_components(a)), ("order " + to_string(a)).c_str());
  const double tau = corr.t / eta;
  if (a == Approximant::Macro2) {
    if (!macro2 || macro2->u_hat.empty()) throw OrderUnavailable("order macro2 needs the macroscopic solve");
    ComplexField out = macro2->u_hat[0];
    axpy(out, eta, micro.first(corr, tau));
    axpy(out, eta * eta, micro.second(corr, tau));
    return out;
  }
  ComplexField out = corr.u_hat[0];
  if (a == Approximant::Order0) return out;
  axpy(out, eta, corr.u_hat[1]);
  if (a == Approximant::Order1 || a == Approximant::Order2) axpy(out, eta, micro.first(corr, tau));
  if (a == Approximant::Order1 || a == Approximant::Macro1Only) return out;
  axpy(out, eta * eta, corr.u_hat[2]);
  if (a == Approximant::Order2) axpy(out, eta * eta, micro.second(corr, tau));
  return out;
}

HomogenizedBundle build_bundle(CaseTag c, std::shared_ptr<const CellSolution> cells, double eta,
                               const InitialData& data, const SpectralGrid& grid, double T, double dt,
                               int components, bool with_macro2) {
  HomogenizedBundle b;
  b.which = c;
  b.eta = eta;
  b.cells = std::move(cells);
  b.grid = grid;
  b.T = T;
  b.dt = dt;
  b.macro = record(corrector_problem(c, b.coeffs(), data, components, grid, T, dt));
  if (with_macro2) b.macro2 = record(macro2_problem(c, b.coeffs(), eta, data, grid, T, dt));
  return b;
}

std::vector<ComplexField> reconstruct(const HomogenizedBundle& b, Approximant a) {
  if (a == Approximant::Macro2 && b.macro2.empty()) throw OrderUnavailable("bundle has no macroscopic solve");
  if (b.macro.empty()) throw OrderUnavailable("bundle is empty");
  MicroClosures micro(b.which, b.cells, b.grid);
  std::vector<ComplexField> out;
  out.reserve(b.macro.size());
  for (std::size_t n = 0; n < b.macro.size(); ++n) {
    out.push_back(approximant(a, micro, b.eta, b.macro[n], b.macro2.empty() ? nullptr : &b.macro2[n]));
  }
  return out;
}

std::vector<ComplexField> reconstruct(const HomogenizedBundle& b, int order) {
  switch (order) {
    case 0:
      return reconstruct(b, Approximant::Order0);
    case 1:
      return reconstruct(b, Approximant::Order1);
    case 2:
      return reconstruct(b, Approximant::Order2);
  }
  throw OrderUnavailable("order " + std::to_string(order) + " is not implemented");
}

std::vector<RealField> recover_E_from_D(const std::vector<RealField>& D, std::span<const double> times,
                                        const PermittivityBlueprint& bp, double eta) {
  if (D.size() != times.size()) throw GridMismatch("D trajectory and time list differ in length");
  std::vector<RealField> E;
  E.reserve(D.size());
  for (std::size_t n = 0; n < D.size(); ++n) {
    const double eps = bp.is_constant() ? bp(0.0) : bp(times[n] / eta);
    RealField e(D[n]);
    for (auto& v : e) v /= eps;
    E.push_back(std::move(e));
  }
  return E;
}

}  // namespace tempohom
