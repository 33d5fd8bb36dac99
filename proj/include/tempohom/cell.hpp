#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tempohom/blueprint.hpp"
#include "tempohom/periodic.hpp"

namespace tempohom {

enum class CellKind { Chi, Theta, Xi, Zeta };

std::string to_string(CellKind kind);

/// Zero-mean 1-periodic solution of one of the cell problems, with spectral
/// derivative samples on the same tau-grid.
struct CellFunction {
  CellKind which = CellKind::Chi;
  PeriodicProfile values;
  PeriodicProfile derivative;

  double operator()(double tau) const { return values(tau); }
  double mean() const { return values.mean(); }
};

/// Scalar constants derived from a blueprint.
///
/// kappa = int_0^1 eps^{-1}(tau) int_0^tau chi ds dtau is the constant in the
/// initial momentum of the magnetic second-order corrector.
struct EffectiveCoefficients {
  double eps_hom = 0.0;
  double eps_cor = 0.0;
  double chi0 = 0.0;
  double theta0 = 0.0;
  double kappa = 0.0;
};

/// All cell functions and coefficients of one blueprint.
///
/// Everything is built from exact iterated antiderivatives of the
/// Fourier-represented eps^{-1}; the alternative algebraic forms are kept
/// for cross-validation.
class CellSolution {
 public:
  explicit CellSolution(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);

  const PermittivityBlueprint& blueprint() const { return bp_; }
  std::size_t grid_size() const { return inv_.size(); }

  const EffectiveCoefficients& coefficients() const { return coeffs_; }
  const CellFunction& chi() const { return chi_; }
  const CellFunction& theta() const { return theta_; }
  const CellFunction& xi() const { return xi_; }
  const CellFunction& zeta() const { return zeta_; }

  const PeriodicProfile& inverse_profile() const { return inv_; }
  const PeriodicProfile& eps_profile() const { return eps_; }

  // Alternative routes to the same constants.
  double eps_hom_flux_form() const;       // int eps (1 + d chi)
  double chi0_single_integral() const;    // 1/2 - eps_hom int (1-s) eps^{-1}
  double eps_cor_energy_form() const;     // -eps_hom^{-1} int (d theta)^2
  double kappa_identity_form() const;     // -theta0/eps_hom - int eps^{-1} xi
  double zeta_flux_integral() const;      // eps_hom^{-2} int eps (xi + d zeta)

 private:
  PermittivityBlueprint bp_;
  PeriodicProfile inv_, eps_;
  EffectiveCoefficients coeffs_;
  CellFunction chi_, theta_, xi_, zeta_;
};

double eps_hom(const PermittivityBlueprint& bp);
double eps_cor(const PermittivityBlueprint& bp);
double chi0(const PermittivityBlueprint& bp);
double theta0(const PermittivityBlueprint& bp);
double kappa(const PermittivityBlueprint& bp);
EffectiveCoefficients effective_coefficients(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);

CellFunction solve_chi(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);
CellFunction solve_theta(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);
CellFunction solve_xi(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);
CellFunction solve_zeta(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
};

struct IdentityReport {
  std::vector<IdentityResidual> residuals;
  /// True when int_0^1 (s - 1/2) eps^{-1}(s) ds vanishes, i.e. chi0 = 0 and
  /// the electric first corrector is identically zero.
  bool degenerate = false;
  /// Acceptance tolerance for the residuals: 1e-8 for closed-form blueprints,
  /// 1e-6 for tabulated ones.
  double tolerance = 1e-8;

  double max_residual() const;
  bool ok() const { return max_residual() <= tolerance; }
};

/// Sup-norm residuals of every cross-identity between cell functions and
/// coefficients, plus the ODE residuals of the four cell problems.
IdentityReport verify_identities(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);
IdentityReport verify_identities(const CellSolution& cells);

}  // namespace tempohom
