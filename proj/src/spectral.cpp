#include "tempohom/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "tempohom/errors.hpp"

namespace tempohom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Two-stage Gauss-Legendre tableau.
const double kSqrt3 = std::sqrt(3.0);
const double kC1 = 0.5 - kSqrt3 / 6.0;
const double kC2 = 0.5 + kSqrt3 / 6.0;
const double kA11 = 0.25;
const double kA12 = 0.25 - kSqrt3 / 6.0;
const double kA21 = 0.25 + kSqrt3 / 6.0;
const double kA22 = 0.25;

using Eigen::MatrixXd;

// Per-mode generator of y' = M(t) y, y = (u_0, w_0, u_1, w_1, ...).
MatrixXd generator(const WaveProblem& p, double k2, double a) {
  const std::size_t f = p.fields.size();
  const double k4 = k2 * k2;
  MatrixXd m = MatrixXd::Zero(2 * f, 2 * f);
  const bool electric = p.form == WaveForm::ElectricType;
  const double force_scale = electric ? 1.0 / a : 1.0;
  for (std::size_t i = 0; i < f; ++i) {
    const auto& eq = p.fields[i];
    m(2 * i, 2 * i + 1) = electric ? 1.0 : 1.0 / a;
    m(2 * i + 1, 2 * i) += (-k2 + eq.beta * k4) * force_scale;
    for (const auto& src : eq.sources) m(2 * i + 1, 2 * src.field) += src.gamma * k4 * force_scale;
  }
  return m;
}

// One-step map y_{n+1} = R y_n of the Gauss method for a linear system.
std::vector<double> propagator(const WaveProblem& p, double k2, double t, double dt) {
  const double a1 = p.coefficient(t + kC1 * dt);
  const double a2 = p.coefficient(t + kC2 * dt);
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw SingularStageSystem("time coefficient is not positive at a stage time");
  const MatrixXd m1 = generator(p, k2, a1);
  const MatrixXd m2 = generator(p, k2, a2);
  const Eigen::Index n = m1.rows();
  MatrixXd s(2 * n, 2 * n);
  const MatrixXd id = MatrixXd::Identity(n, n);
  s.topLeftCorner(n, n) = id - dt * kA11 * m1;
  s.topRightCorner(n, n) = -dt * kA12 * m1;
  s.bottomLeftCorner(n, n) = -dt * kA21 * m2;
  s.bottomRightCorner(n, n) = id - dt * kA22 * m2;
  MatrixXd rhs(2 * n, n);
  rhs.topRows(n) = m1;
  rhs.bottomRows(n) = m2;
  Eigen::PartialPivLU<MatrixXd> lu(s);
  if (!(lu.rcond() > 1e-14)) throw SingularStageSystem("stage system is numerically singular");
  const MatrixXd stages = lu.solve(rhs);
  const MatrixXd r = id + 0.5 * dt * (stages.topRows(n) + stages.bottomRows(n));
  std::vector<double> out(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] = r(i, j);
  }
  return out;
}

// Applies per-|k| propagators to every mode of the state.
void apply_propagators(const std::vector<std::vector<double>>& props, SolverState& s) {
  const std::size_t f = s.u_hat.size();
  const std::size_t n = f == 0 ? 0 : s.u_hat[0].size();
  const std::size_t dim = 2 * f;
  std::vector<Complex> y(dim), z(dim);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& r = props[std::min(j, n - j)];
    for (std::size_t i = 0; i < f; ++i) {
      y[2 * i] = s.u_hat[i][j];
      y[2 * i + 1] = s.w_hat[i][j];
    }
    for (std::size_t row = 0; row < dim; ++row) {
      Complex acc{};
      for (std::size_t col = 0; col < dim; ++col) acc += r[row * dim + col] * y[col];
      z[row] = acc;
    }
    for (std::size_t i = 0; i < f; ++i) {
      s.u_hat[i][j] = z[2 * i];
      s.w_hat[i][j] = z[2 * i + 1];
    }
  }
}

std::vector<std::vector<double>> all_propagators(const WaveProblem& p, double t, double dt) {
  const std::size_t n = p.grid.size();
  std::vector<std::vector<double>> props(n / 2 + 1);
  for (std::size_t j = 0; j <= n / 2; ++j) {
    const double k = p.grid.wavenumber(j);
    props[j] = propagator(p, k * k, t, dt);
  }
  return props;
}

}  // namespace

SpectralGrid::SpectralGrid(std::size_t n, double length) : n_(n), length_(length) {
  if (n < 8 || !is_power_of_two(n)) throw GridError("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(length > 0.0)) throw GridError("domain length must be positive");
  k_.resize(n);
  for (std::size_t j = 0; j < n; ++j) k_[j] = wavenumber(j);
}

RealField SpectralGrid::nodes() const {
  RealField x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

double SpectralGrid::wavenumber(std::size_t j) const {
  const long jj = static_cast<long>(j);
  const long nn = static_cast<long>(n_);
  const long signed_j = jj < nn / 2 ? jj : jj - nn;
  return kTwoPi * static_cast<double>(signed_j) / length_;
}

ComplexField SpectralGrid::to_spectral(std::span<const double> values) const {
  if (values.size() != n_) throw GridError("field length does not match grid");
  ComplexField in(values.begin(), values.end()), out(n_);
  Fft::of_size(n_).forward(in, out);
  // Nodes start at -L/2, not 0: shift so coefficients describe u(x) directly.
  for (std::size_t j = 0; j < n_; ++j) {
    const double phase = k_[j] * 0.5 * length_;
    out[j] *= Complex{std::cos(phase), std::sin(phase)};
  }
  return out;
}

RealField SpectralGrid::to_physical(std::span<const Complex> coeffs) const {
  if (coeffs.size() != n_) throw GridError("coefficient length does not match grid");
  ComplexField in(coeffs.begin(), coeffs.end()), out(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const double phase = -k_[j] * 0.5 * length_;
    in[j] *= Complex{std::cos(phase), std::sin(phase)};
  }
  Fft::of_size(n_).inverse(in, out);
  RealField v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = out[i].real();
  return v;
}

double SpectralGrid::l2_norm(std::span<const Complex> coeffs) const {
  if (coeffs.size() != n_) throw GridError("coefficient length does not match grid");
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return std::sqrt(s * length_) / static_cast<double>(n_);
}

SpectralGrid make_grid(std::size_t n, double length) { return SpectralGrid(n, length); }

ComplexField laplacian(std::span<const Complex> coeffs, const SpectralGrid& grid) {
  if (coeffs.size() != grid.size()) throw GridError("field length does not match grid");
  ComplexField out(coeffs.begin(), coeffs.end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= -grid.wavenumbers()[j] * grid.wavenumbers()[j];
  return out;
}

ComplexField bilaplacian(std::span<const Complex> coeffs, const SpectralGrid& grid) {
  if (coeffs.size() != grid.size()) throw GridError("field length does not match grid");
  ComplexField out(coeffs.begin(), coeffs.end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= std::pow(grid.wavenumbers()[j], 4);
  return out;
}

ComplexField gradient(std::span<const Complex> coeffs, const SpectralGrid& grid) {
  if (coeffs.size() != grid.size()) throw GridError("field length does not match grid");
  ComplexField out(coeffs.begin(), coeffs.end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= Complex{0.0, grid.wavenumbers()[j]};
  out[grid.size() / 2] = 0.0;
  return out;
}

RealField laplacian(std::span<const double> field, const SpectralGrid& grid) {
  return grid.to_physical(laplacian(grid.to_spectral(field), grid));
}

RealField bilaplacian(std::span<const double> field, const SpectralGrid& grid) {
  return grid.to_physical(bilaplacian(grid.to_spectral(field), grid));
}

// ---------------------------------------------------------------------------

TimeCoefficient TimeCoefficient::constant(double value) {
  if (!(value > 0.0)) throw BlueprintInvalid("time coefficient must be positive");
  TimeCoefficient c;
  c.value_ = value;
  return c;
}

TimeCoefficient TimeCoefficient::modulated(PermittivityBlueprint bp, double eta) {
  if (!(eta > 0.0)) throw GuardViolation("fine-scale parameter eta must be positive");
  TimeCoefficient c;
  c.eta_ = eta;
  c.blueprint_ = std::move(bp);
  return c;
}

double TimeCoefficient::operator()(double t) const {
  return blueprint_ ? (*blueprint_)(t / eta_) : value_;
}

std::size_t WaveProblem::num_steps() const {
  const double ratio = T / dt;
  return static_cast<std::size_t>(std::llround(ratio));
}

void WaveProblem::validate() const {
  if (fields.empty()) throw MissingCoupling("wave problem has no fields");
  for (const auto& eq : fields) {
    if (eq.u0.size() != grid.size() || eq.w0.size() != grid.size()) {
      throw GridError("initial data does not match the grid");
    }
    for (const auto& src : eq.sources) {
      if (src.field >= fields.size()) {
        throw MissingCoupling("source refers to field " + std::to_string(src.field) + " which is not co-integrated");
      }
    }
  }
  if (!(dt > 0.0) || !(T >= 0.0)) throw GridError("time step and final time must be positive");
  const double ratio = T / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-8 * std::max(1.0, ratio)) {
    throw GridError("T/dt is not an integer");
  }
  if (!coefficient.is_constant() && dt > coefficient.eta() / 16.0 * (1.0 + 1e-12)) {
    throw GuardViolation("time step exceeds eta/16 for a modulated coefficient");
  }
}

SolverState initial_state(const WaveProblem& problem) {
  SolverState s;
  for (const auto& eq : problem.fields) {
    s.u_hat.push_back(eq.u0);
    s.w_hat.push_back(eq.w0);
  }
  s.t = 0.0;
  return s;
}

SolverState irk4_step(const WaveProblem& problem, const SolverState& state, double dt) {
  if (state.u_hat.size() != problem.fields.size()) throw GridError("state does not match problem");
  SolverState next = state;
  apply_propagators(all_propagators(problem, state.t, dt), next);
  next.t = state.t + dt;
  return next;
}

Integrator::Integrator(WaveProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
  state_ = initial_state(problem_);
  total_ = problem_.num_steps();
}

void Integrator::step() {
  const double t = static_cast<double>(steps_) * problem_.dt;
  if (problem_.coefficient.is_constant()) {
    if (cached_.empty()) cached_ = all_propagators(problem_, 0.0, problem_.dt);
    apply_propagators(cached_, state_);
  } else {
    apply_propagators(all_propagators(problem_, t, problem_.dt), state_);
  }
  ++steps_;
  state_.t = static_cast<double>(steps_) * problem_.dt;
}

SolverState solve(const WaveProblem& problem, const StepObserver& observer) {
  Integrator integrator(problem);
  if (observer) observer(integrator.state());
  while (!integrator.done()) {
    integrator.step();
    if (observer) observer(integrator.state());
  }
  return integrator.state();
}

void write_field_dump(const std::string& path, const SpectralGrid& grid, double t, std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dump file '" + path + "'");
  char line[96];
  std::snprintf(line, sizeof line, "# t=%.17g N=%zu L=%.17g\n", t, grid.size(), grid.length());
  out << line;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", grid.node(i), values[i]);
    out << line;
  }
}

}  // namespace tempohom
