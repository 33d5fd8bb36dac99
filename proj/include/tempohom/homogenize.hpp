#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempohom/blueprint.hpp"
#include "tempohom/cell.hpp"
#include "tempohom/spectral.hpp"

namespace tempohom {

/// Electric: eps_eta(t) d_tt u = Lap u. Magnetic: d_t(eps_eta(t) d_t u) = Lap u.
enum class CaseTag { Electric, Magnetic };

std::string to_string(CaseTag c);
CaseTag parse_case(std::string_view s);
WaveForm wave_form(CaseTag c);

/// Initial field and second initial condition, spectral. v1 is d_t u(0) in
/// the electric case and the momentum eps d_t u(0) in the magnetic case.
struct InitialData {
  ComplexField v0;
  ComplexField v1;
};

/// Approximants of the full-wave solution.
///   Order0..Order2: u0 + sum_j eta^j (ubar_j + utilde_j(t/eta))
///   Macro2: single-solve macroscopic problem plus micro parts
///   Macro1Only, Macro2Only: macroscopic sums without micro parts
enum class Approximant { Order0, Order1, Order2, Macro2, Macro1Only, Macro2Only };

std::string to_string(Approximant a);
/// Accepts 0, 1, 2, macro2, mac1, mac2.
Approximant parse_approximant(std::string_view s);
/// Number of macro components (u0, ubar1, ubar2) needed.
int macro_components(Approximant a);

using Trajectory = std::vector<SolverState>;

// Problem builders. The corrector system co-integrates u0, ubar1, ubar2 as
// fields 0, 1, 2; `components` truncates it.
WaveProblem full_wave_problem(CaseTag c, const PermittivityBlueprint& bp, double eta, const InitialData& data,
                              const SpectralGrid& grid, double T, double dt);
WaveProblem corrector_problem(CaseTag c, const EffectiveCoefficients& k, const InitialData& data, int components,
                              const SpectralGrid& grid, double T, double dt);
WaveProblem macro2_problem(CaseTag c, const EffectiveCoefficients& k, double eta, const InitialData& data,
                           const SpectralGrid& grid, double T, double dt);

Trajectory solve_effective(CaseTag c, const CellSolution& cells, const InitialData& data, const SpectralGrid& grid,
                           double T, double dt);
/// Fields u0 and ubar1.
Trajectory solve_corrector1(CaseTag c, const CellSolution& cells, const InitialData& data, const SpectralGrid& grid,
                            double T, double dt);
/// Fields u0, ubar1 and ubar2.
Trajectory solve_corrector2(CaseTag c, const CellSolution& cells, const InitialData& data, const SpectralGrid& grid,
                            double T, double dt);
Trajectory solve_macroscopic2(CaseTag c, const CellSolution& cells, double eta, const InitialData& data,
                              const SpectralGrid& grid, double T, double dt);

/// Micro parts evaluated on a state of the corrector system.
class MicroClosures {
 public:
  MicroClosures(CaseTag c, std::shared_ptr<const CellSolution> cells, SpectralGrid grid);

  /// Electric: 0. Magnetic: chi(tau) d_t u0.
  ComplexField first(const SolverState& s, double tau) const;
  /// Electric: theta(tau) Lap u0 / eps_hom.
  /// Magnetic: xi(tau) Lap u0 / eps_hom + chi(tau) d_t ubar1.
  ComplexField second(const SolverState& s, double tau) const;

  /// d_t of field i read from its companion variable.
  ComplexField time_derivative(const SolverState& s, std::size_t i) const;

 private:
  CaseTag case_;
  std::shared_ptr<const CellSolution> cells_;
  SpectralGrid grid_;
};

/// Evaluates an approximant at one time. `corr` is a corrector-system state;
/// `macro2` is required only for Approximant::Macro2.
ComplexField approximant(Approximant a, const MicroClosures& micro, double eta, const SolverState& corr,
                         const SolverState* macro2 = nullptr);

/// All homogenized trajectories of one (case, blueprint, eta) on a shared
/// time grid.
struct HomogenizedBundle {
  CaseTag which = CaseTag::Electric;
  double eta = 0.0;
  std::shared_ptr<const CellSolution> cells;
  SpectralGrid grid{64};
  double T = 0.0;
  double dt = 0.0;
  Trajectory macro;   // corrector system, 1 to 3 fields
  Trajectory macro2;  // empty unless requested

  const EffectiveCoefficients& coeffs() const { return cells->coefficients(); }
};

HomogenizedBundle build_bundle(CaseTag c, std::shared_ptr<const CellSolution> cells, double eta,
                               const InitialData& data, const SpectralGrid& grid, double T, double dt,
                               int components = 3, bool with_macro2 = false);

/// Approximant at every stored time; OrderUnavailable if the bundle lacks a
/// needed component.
std::vector<ComplexField> reconstruct(const HomogenizedBundle& b, Approximant a);
std::vector<ComplexField> reconstruct(const HomogenizedBundle& b, int order);

/// E(x, t) = D(x, t) / eps(t / eta) at each stored time.
std::vector<RealField> recover_E_from_D(const std::vector<RealField>& D, std::span<const double> times,
                                        const PermittivityBlueprint& bp, double eta);

}  // namespace tempohom
