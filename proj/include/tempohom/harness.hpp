#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tempohom/blueprint.hpp"
#include "tempohom/homogenize.hpp"
#include "tempohom/spectral.hpp"

namespace tempohom {

/// Gaussian packet v0(x) = exp(-x^2 / (2 T0^2)) cos(omega0 x).
struct PacketParams {
  double T0 = 0.1;
  double omega0 = 0.01;
};

/// v0 sampled on the grid and v1 = -d_x v0 (right-moving data), spectral.
/// Throws BoundaryLeak if |v0(+-1)| > 1e-14.
InitialData packet_init(const PacketParams& params, const SpectralGrid& grid);

/// Streaming sqrt(int_0^T ||d(t)||^2 dt) with the trapezoid rule on the step
/// grid, endpoints included.
class L2TimeNorm {
 public:
  L2TimeNorm(SpectralGrid grid, double dt, std::size_t steps);

  /// Adds the difference at step n (0..steps).
  void add(std::size_t n, std::span<const Complex> a, std::span<const Complex> b);
  void add(std::size_t n, std::span<const Complex> diff);
  double value() const;

 private:
  SpectralGrid grid_;
  double dt_;
  std::size_t steps_;
  double sum_ = 0.0;
};

/// Snapshots of one spectral field on the solver time grid.
struct FieldSeries {
  SpectralGrid grid{64};
  double dt = 0.0;
  std::vector<ComplexField> values;
};

/// L2(0,T; L2) distance; GridMismatch unless grid, dt and length agree.
double l2t_l2x_error(const FieldSeries& a, const FieldSeries& b);

/// Least-squares slope of log(error) against log(eta); needs >= 3 positive points.
double estimate_rate(std::span<const double> etas, std::span<const double> errors);

struct RateFit {
  double slope = 0.0;
  /// The coarsest eta was dropped because its error was below the next one.
  bool excluded_coarsest = false;
  std::size_t points = 0;
};

RateFit fit_rate(std::span<const double> etas, std::span<const double> errors);

struct StudyConfig {
  CaseTag which = CaseTag::Electric;
  PermittivityBlueprint bp = PermittivityBlueprint::sine_inverse();
  PacketParams packet;
  std::vector<double> etas;
  std::vector<Approximant> orders;
  std::size_t N = 64;
  double T = 0.4;
  double dt = 0.0;
  /// Worker threads for the eta sweep; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// eta = T / l for each l.
std::vector<double> etas_from_ells(std::span<const int> ells, double T);

/// l in {10, 20, 40, 80}, dt = 2^-11 T, N = 64, T = 0.4, all orders.
StudyConfig desk_config(CaseTag which, const PermittivityBlueprint& bp);
/// l in {10, 20, 40, 80, 150, 300}, dt = 2^-13 T.
StudyConfig full_scale_config(CaseTag which, const PermittivityBlueprint& bp);

struct OrderResult {
  Approximant order = Approximant::Order0;
  std::vector<double> errors;  // one per eta, in sweep order
  RateFit fit;
};

struct ErrorReport {
  CaseTag which = CaseTag::Electric;
  std::string blueprint;
  std::vector<double> etas;
  std::vector<OrderResult> results;
  /// Every error is at round-off level; slopes are NaN.
  bool degenerate = false;

  const OrderResult& at(Approximant a) const;
};

/// Runs the full-wave problem and every requested approximant in lockstep for
/// each eta and fits slopes. GuardViolation if dt > eta/16 or omega0 eta > 0.1.
ErrorReport convergence_study(const StudyConfig& cfg);

/// Header `case,eta,order,error,slope_fitted`; slope rows carry eta=NA.
void write_csv(const ErrorReport& report, std::ostream& out);

/// Slope bands of the desk-scale sweep. Appends one line per violation.
bool check_report(const ErrorReport& report, std::vector<std::string>& failures);

/// Fraction of the final-time energy carried by the left-going
/// characteristic of the effective medium, sum k^2 |L_k|^2 / sum k^2 (|L_k|^2 + |R_k|^2).
double left_going_fraction(CaseTag which, const PermittivityBlueprint& bp, double eta, const PacketParams& packet,
                           const SpectralGrid& grid, double T, double dt);

/// Relative oscillation (max - min) / mean over the last eta-period of the
/// packet peak max_{x > 0} |field| for D (electric full wave) and E = D / eps.
struct FieldContrast {
  double d_oscillation = 0.0;
  double e_oscillation = 0.0;
  double ratio() const { return e_oscillation / d_oscillation; }
};

FieldContrast e_d_contrast(const PermittivityBlueprint& bp, double eta, const PacketParams& packet,
                           const SpectralGrid& grid, double T, double dt);

}  // namespace tempohom
