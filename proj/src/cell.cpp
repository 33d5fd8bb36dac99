#include "tempohom/cell.hpp"

#include <algorithm>
#include <cmath>

#include "tempohom/errors.hpp"

namespace tempohom {
namespace {

// Drift tolerance when a quasi-periodic expression is known to be periodic.
constexpr double kDriftTol = 1e-9;

CellFunction make_cell(CellKind which, PeriodicProfile values) {
  CellFunction f;
  f.which = which;
  f.derivative = values.derivative();
  f.values = std::move(values);
  return f;
}

double mean_of(const PeriodicProfile& p) { return p.mean(); }

}  // namespace

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Chi:
      return "chi";
    case CellKind::Theta:
      return "theta";
    case CellKind::Xi:
      return "xi";
    case CellKind::Zeta:
      return "zeta";
  }
  return "?";
}

CellSolution::CellSolution(const PermittivityBlueprint& bp, std::size_t m)
    : bp_(bp), inv_(profile_of_inverse(bp, m)), eps_(profile_of_eps(bp, m)) {
  const QuasiPeriodic i1 = antiderivative(inv_);
  const QuasiPeriodic i2 = i1.integral();
  const QuasiPeriodic i3 = i2.integral();
  const double i2_at_1 = i2(1.0);

  auto& c = coeffs_;
  c.eps_hom = 1.0 / inv_.mean();
  c.chi0 = 0.5 - c.eps_hom * i2_at_1;
  c.theta0 = -1.0 / 12.0 - c.eps_hom * (i3(1.0) - 0.5 * i2_at_1);

  // chi = chi0 + eps_hom int_0^tau eps^{-1} - tau
  const QuasiPeriodic chi_q = i1 * c.eps_hom + QuasiPeriodic::polynomial({c.chi0, -1.0}, m);
  chi_ = make_cell(CellKind::Chi, chi_q.to_profile(kDriftTol));

  // theta = theta0 - (tau^2 - tau)/2 + eps_hom (I2(tau) - tau I2(1))
  const QuasiPeriodic theta_q = QuasiPeriodic::polynomial({c.theta0, 0.5, -0.5}, m) +
                                (i2 - QuasiPeriodic::polynomial({0.0, i2_at_1}, m)) * c.eps_hom;
  theta_ = make_cell(CellKind::Theta, theta_q.to_profile(kDriftTol));

  // xi = -theta0 - int_0^tau chi
  const QuasiPeriodic chi_integral = antiderivative(chi_.values);
  const PeriodicProfile j = chi_integral.to_profile(kDriftTol);
  xi_ = make_cell(CellKind::Xi, (j * -1.0) + (-c.theta0));

  c.kappa = mean_of(inv_ * j);
  c.eps_cor = mean_of(inv_ * theta_.values);
  // Round-off can leave a tiny positive value for constant blueprints.
  if (c.eps_cor > 0.0 && c.eps_cor < 1e-14) c.eps_cor = 0.0;

  // zeta: eps d zeta = -eps xi + eps_hom int_0^tau chi + C, with C fixed by
  // periodicity of zeta (the flux divided by eps has zero mean).
  const double rhs_mean = c.eps_hom * chi_.values.mean();
  if (std::abs(rhs_mean) > 1e-10) {
    throw IllPosedCell("zeta cell problem fails the compatibility condition: mean " + std::to_string(rhs_mean));
  }
  const double flux_const = (xi_.values.mean() - c.eps_hom * c.kappa) / inv_.mean();
  const PeriodicProfile dzeta = (xi_.values * -1.0) + inv_ * ((j * c.eps_hom) + flux_const);
  const PeriodicProfile zeta = antiderivative(dzeta).to_profile(kDriftTol);
  zeta_ = make_cell(CellKind::Zeta, zeta.zero_mean());

  const double energy = eps_cor_energy_form();
  if ((c.eps_cor > 1e-13 && energy <= 0.0) || energy > 0.0) {
    throw PositivityViolation("eps_cor has the wrong sign: " + std::to_string(c.eps_cor));
  }
}

double CellSolution::eps_hom_flux_form() const {
  return mean_of(eps_ * (chi_.derivative + 1.0));
}

double CellSolution::chi0_single_integral() const {
  return 0.5 - coeffs_.eps_hom * first_moment_weighted_integral(inv_);
}

double CellSolution::eps_cor_energy_form() const {
  return -mean_of(theta_.derivative * theta_.derivative) / coeffs_.eps_hom;
}

double CellSolution::kappa_identity_form() const {
  return -coeffs_.theta0 / coeffs_.eps_hom - mean_of(inv_ * xi_.values);
}

double CellSolution::zeta_flux_integral() const {
  const double eh = coeffs_.eps_hom;
  return mean_of(eps_ * (xi_.values + zeta_.derivative)) / (eh * eh);
}

double eps_hom(const PermittivityBlueprint& bp) { return 1.0 / profile_of_inverse(bp).mean(); }
double eps_cor(const PermittivityBlueprint& bp) { return CellSolution(bp).coefficients().eps_cor; }
double chi0(const PermittivityBlueprint& bp) { return CellSolution(bp).coefficients().chi0; }
double theta0(const PermittivityBlueprint& bp) { return CellSolution(bp).coefficients().theta0; }
double kappa(const PermittivityBlueprint& bp) { return CellSolution(bp).coefficients().kappa; }

EffectiveCoefficients effective_coefficients(const PermittivityBlueprint& bp, std::size_t m) {
  return CellSolution(bp, m).coefficients();
}

CellFunction solve_chi(const PermittivityBlueprint& bp, std::size_t m) { return CellSolution(bp, m).chi(); }
CellFunction solve_theta(const PermittivityBlueprint& bp, std::size_t m) { return CellSolution(bp, m).theta(); }
CellFunction solve_xi(const PermittivityBlueprint& bp, std::size_t m) { return CellSolution(bp, m).xi(); }
CellFunction solve_zeta(const PermittivityBlueprint& bp, std::size_t m) { return CellSolution(bp, m).zeta(); }

double IdentityReport::max_residual() const {
  double r = 0.0;
  for (const auto& item : residuals) r = std::max(r, item.residual);
  return r;
}

IdentityReport verify_identities(const PermittivityBlueprint& bp, std::size_t m) {
  return verify_identities(CellSolution(bp, m));
}

IdentityReport verify_identities(const CellSolution& cells) {
  const auto& c = cells.coefficients();
  const auto& eps = cells.eps_profile();
  const auto& inv = cells.inverse_profile();
  const auto& chi = cells.chi();
  const auto& theta = cells.theta();
  const auto& xi = cells.xi();
  const auto& zeta = cells.zeta();

  IdentityReport report;
  report.tolerance = cells.blueprint().kind() == BlueprintKind::TabulatedSamples ? 1e-6 : 1e-8;
  auto add = [&](std::string name, double value) { report.residuals.push_back({std::move(name), std::abs(value)}); };

  add("mean(chi)", chi.mean());
  add("mean(theta)", theta.mean());
  add("mean(xi)", xi.mean());
  add("mean(zeta)", zeta.mean());
  add("eps(1+dchi) - eps_hom", (eps * (chi.derivative + 1.0) + (-c.eps_hom)).sup_norm());
  add("chi + dxi", (chi.values + xi.derivative).sup_norm());
  add("xi(0) + theta0", xi.values.samples()[0] + c.theta0);
  add("theta(0) - theta0", theta.values.samples()[0] - c.theta0);
  add("eps_hom harmonic vs flux", c.eps_hom - cells.eps_hom_flux_form());
  add("chi0 double vs single integral", c.chi0 - cells.chi0_single_integral());
  add("eps_cor vs -|dtheta|^2/eps_hom", c.eps_cor - cells.eps_cor_energy_form());
  add("eps_hom^-2 int eps(xi+dzeta) + eps_cor", cells.zeta_flux_integral() + c.eps_cor);
  add("kappa direct vs identity", c.kappa - cells.kappa_identity_form());

  const PeriodicProfile deps = eps.derivative();
  add("chi cell ODE", ((eps * chi.derivative).derivative() + deps).sup_norm());
  add("theta cell ODE", (theta.derivative.derivative() - ((inv * c.eps_hom) + -1.0)).sup_norm());
  add("xi cell ODE", ((eps * xi.derivative).derivative() + (eps * chi.values).derivative()).sup_norm());
  add("zeta cell ODE",
      ((eps * zeta.derivative).derivative() + (eps * xi.values).derivative() - chi.values * c.eps_hom).sup_norm());

  report.degenerate = std::abs(c.chi0) <= 1e-12 * (1.0 + std::abs(c.theta0));
  return report;
}

}  // namespace tempohom
