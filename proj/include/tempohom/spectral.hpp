#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempohom/blueprint.hpp"
#include "tempohom/fft.hpp"

namespace tempohom {

using ComplexField = std::vector<Complex>;
using RealField = std::vector<double>;

/// Uniform periodic grid on (-L/2, L/2) with N points and the matching
/// Fourier wavenumbers k_j = 2 pi j / L, j in {-N/2, ..., N/2-1}.
///
/// Spectral coefficients are the unnormalized DFT of the nodal values, in FFT
/// order. Copies are cheap; transforms can run concurrently.
class SpectralGrid {
 public:
  SpectralGrid(std::size_t n, double length = 2.0);

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double node(std::size_t i) const { return -0.5 * length_ + static_cast<double>(i) * spacing(); }
  RealField nodes() const;
  /// Wavenumber of FFT index j (index N/2 carries -pi N / L).
  double wavenumber(std::size_t j) const;
  const std::vector<double>& wavenumbers() const { return k_; }

  ComplexField to_spectral(std::span<const double> values) const;
  RealField to_physical(std::span<const Complex> coeffs) const;

  /// L2(-L/2, L/2) norm from coefficients (Parseval), so that ||1|| = sqrt(L).
  double l2_norm(std::span<const Complex> coeffs) const;

  bool operator==(const SpectralGrid& o) const { return n_ == o.n_ && length_ == o.length_; }

 private:
  std::size_t n_;
  double length_;
  std::vector<double> k_;
};

SpectralGrid make_grid(std::size_t n, double length = 2.0);

/// Multiplies coefficients by -k^2.
ComplexField laplacian(std::span<const Complex> coeffs, const SpectralGrid& grid);
/// Multiplies coefficients by k^4.
ComplexField bilaplacian(std::span<const Complex> coeffs, const SpectralGrid& grid);
/// Multiplies coefficients by i k; the Nyquist mode is dropped so real fields stay real.
ComplexField gradient(std::span<const Complex> coeffs, const SpectralGrid& grid);

RealField laplacian(std::span<const double> field, const SpectralGrid& grid);
RealField bilaplacian(std::span<const double> field, const SpectralGrid& grid);

/// Space-independent scalar coefficient a(t) multiplying the time derivatives.
class TimeCoefficient {
 public:
  static TimeCoefficient constant(double value);
  /// a(t) = eps(t / eta).
  static TimeCoefficient modulated(PermittivityBlueprint bp, double eta);

  double operator()(double t) const;
  bool is_constant() const { return !blueprint_.has_value(); }
  /// Fine-scale period; zero for a constant coefficient.
  double eta() const { return eta_; }

 private:
  double value_ = 1.0;
  double eta_ = 0.0;
  std::optional<PermittivityBlueprint> blueprint_;
};

/// Placement of the time-dependent coefficient.
///  ElectricType: a(t) u'' = Lap u + beta Bilap u + f, companion w = u'.
///  MagneticType: (a(t) u')' = Lap u + beta Bilap u + f, companion w = a u'.
enum class WaveForm { ElectricType, MagneticType };

/// Source term gamma * Bilap(u_field) coupling one co-integrated field into another.
struct BilaplacianSource {
  std::size_t field = 0;
  double gamma = 0.0;
};

/// One scalar wave equation of a (possibly coupled) system.
struct FieldEquation {
  double beta = 0.0;
  std::vector<BilaplacianSource> sources;
  ComplexField u0;  // initial field, spectral
  ComplexField w0;  // initial companion variable, spectral
};

/// Linear wave problem on a periodic grid. All fields share the form and the
/// coefficient; a single-field problem is the common case, while corrector
/// systems co-integrate the fields their sources depend on.
struct WaveProblem {
  WaveForm form = WaveForm::ElectricType;
  TimeCoefficient coefficient = TimeCoefficient::constant(1.0);
  std::vector<FieldEquation> fields;
  SpectralGrid grid{64};
  double T = 0.0;
  double dt = 0.0;

  std::size_t num_steps() const;
  /// Throws MissingCoupling, GuardViolation or GridError for inconsistent input.
  void validate() const;
};

/// Spectral state of every field at time t.
struct SolverState {
  std::vector<ComplexField> u_hat;
  std::vector<ComplexField> w_hat;
  double t = 0.0;
};

SolverState initial_state(const WaveProblem& problem);

/// Advances `state` by one step of the two-stage Gauss-Legendre method.
SolverState irk4_step(const WaveProblem& problem, const SolverState& state, double dt);

/// Stateful fixed-step integrator; caches the one-step propagators when the
/// coefficient is constant.
class Integrator {
 public:
  explicit Integrator(WaveProblem problem);

  const WaveProblem& problem() const { return problem_; }
  const SolverState& state() const { return state_; }
  std::size_t steps_taken() const { return steps_; }
  std::size_t total_steps() const { return total_; }
  bool done() const { return steps_ >= total_; }
  void step();

 private:
  WaveProblem problem_;
  SolverState state_;
  std::size_t steps_ = 0;
  std::size_t total_ = 0;
  // Row-major 2F x 2F propagators per distinct |k|, reused for constant coefficients.
  std::vector<std::vector<double>> cached_;
};

using StepObserver = std::function<void(const SolverState&)>;

/// Integrates from 0 to T. The observer sees the initial state and every
/// accepted step.
SolverState solve(const WaveProblem& problem, const StepObserver& observer = {});

/// Writes `# t=<t> N=<N> L=<L>` followed by N lines `x value`.
void write_field_dump(const std::string& path, const SpectralGrid& grid, double t, std::span<const double> values);

}  // namespace tempohom
