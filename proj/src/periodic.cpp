#include "tempohom/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tempohom/errors.hpp"

namespace tempohom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid(std::size_t m) {
  if (m < 8 || !is_power_of_two(m)) {
    throw GridError("periodic grid size must be a power of two >= 8, got " + std::to_string(m));
  }
}

// Signed wavenumber of FFT index j.
long wavenumber(std::size_t j, std::size_t m) {
  const long jj = static_cast<long>(j);
  const long mm = static_cast<long>(m);
  return jj < mm / 2 ? jj : jj - mm;
}

std::vector<Complex> transform(std::span<const double> samples) {
  const std::size_t m = samples.size();
  std::vector<Complex> in(samples.begin(), samples.end()), out(m);
  Fft::of_size(m).forward(in, out);
  for (auto& c : out) c /= static_cast<double>(m);
  return out;
}

std::vector<double> synthesize(std::span<const Complex> coeffs) {
  const std::size_t m = coeffs.size();
  std::vector<Complex> in(coeffs.begin(), coeffs.end()), out(m);
  for (auto& c : in) c *= static_cast<double>(m);
  Fft::of_size(m).inverse(in, out);
  std::vector<double> s(m);
  std::transform(out.begin(), out.end(), s.begin(), [](Complex z) { return z.real(); });
  return s;
}

}  // namespace

PeriodicProfile PeriodicProfile::from_samples(std::vector<double> samples) {
  check_grid(samples.size());
  PeriodicProfile p;
  p.coeffs_ = transform(samples);
  p.samples_ = std::move(samples);
  p.mean_ = p.coeffs_[0].real();
  p.coeffs_[0] = 0.0;
  p.refresh_bandwidth();
  return p;
}

PeriodicProfile PeriodicProfile::constant(double value, std::size_t m) {
  check_grid(m);
  PeriodicProfile p;
  p.samples_.assign(m, value);
  p.coeffs_.assign(m, Complex{});
  p.mean_ = value;
  return p;
}

PeriodicProfile PeriodicProfile::from_coefficients(std::vector<Complex> coeffs) {
  check_grid(coeffs.size());
  PeriodicProfile p;
  p.mean_ = coeffs[0].real();
  p.samples_ = synthesize(coeffs);
  coeffs[0] = 0.0;
  p.coeffs_ = std::move(coeffs);
  p.refresh_bandwidth();
  return p;
}

void PeriodicProfile::refresh_bandwidth() {
  const std::size_t m = size();
  double scale = std::abs(mean_);
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double cutoff = 1e-18 * std::max(scale, 1e-300);
  bandwidth_ = 0;
  for (std::size_t j = 1; j <= m / 2; ++j) {
    const double mag = std::max(std::abs(coeffs_[j]), std::abs(coeffs_[(m - j) % m]));
    if (mag > cutoff) bandwidth_ = j;
  }
}

double PeriodicProfile::operator()(double tau) const {
  const std::size_t m = size();
  double value = mean_;
  const std::size_t top = std::min(bandwidth_, m / 2 - 1);
  for (std::size_t k = 1; k <= top; ++k) {
    const double phase = kTwoPi * static_cast<double>(k) * tau;
    const Complex e{std::cos(phase), std::sin(phase)};
    value += 2.0 * (coeffs_[k] * e).real();
  }
  if (bandwidth_ == m / 2) {
    value += coeffs_[m / 2].real() * std::cos(kTwoPi * static_cast<double>(m / 2) * tau);
  }
  return value;
}

PeriodicProfile PeriodicProfile::derivative() const {
  const std::size_t m = size();
  std::vector<Complex> c(m);
  for (std::size_t j = 1; j < m; ++j) {
    if (j == m / 2) continue;  // Nyquist mode has no odd-derivative partner
    c[j] = Complex{0.0, kTwoPi * static_cast<double>(wavenumber(j, m))} * coeffs_[j];
  }
  return from_coefficients(std::move(c));
}

PeriodicProfile PeriodicProfile::zero_mean() const { return *this + (-mean_); }

PeriodicProfile PeriodicProfile::zero_mean_antiderivative() const {
  const std::size_t m = size();
  std::vector<Complex> c(m);
  for (std::size_t j = 1; j < m; ++j) {
    if (j == m / 2) continue;
    c[j] = coeffs_[j] / Complex{0.0, kTwoPi * static_cast<double>(wavenumber(j, m))};
  }
  return from_coefficients(std::move(c));
}

double PeriodicProfile::sup_norm() const {
  double s = 0.0;
  for (double v : samples_) s = std::max(s, std::abs(v));
  return s;
}

PeriodicProfile PeriodicProfile::operator+(const PeriodicProfile& o) const {
  if (o.size() != size()) throw GridError("profile grid mismatch");
  PeriodicProfile p = *this;
  for (std::size_t j = 0; j < size(); ++j) {
    p.samples_[j] += o.samples_[j];
    p.coeffs_[j] += o.coeffs_[j];
  }
  p.mean_ += o.mean_;
  p.refresh_bandwidth();
  return p;
}

PeriodicProfile PeriodicProfile::operator-(const PeriodicProfile& o) const { return *this + o * -1.0; }

PeriodicProfile PeriodicProfile::operator*(const PeriodicProfile& o) const {
  if (o.size() != size()) throw GridError("profile grid mismatch");
  std::vector<double> s(size());
  for (std::size_t j = 0; j < size(); ++j) s[j] = samples_[j] * o.samples_[j];
  return from_samples(std::move(s));
}

PeriodicProfile PeriodicProfile::operator*(double s) const {
  PeriodicProfile p = *this;
  for (auto& v : p.samples_) v *= s;
  for (auto& c : p.coeffs_) c *= s;
  p.mean_ *= s;
  return p;
}

PeriodicProfile PeriodicProfile::operator+(double s) const {
  PeriodicProfile p = *this;
  for (auto& v : p.samples_) v += s;
  p.mean_ += s;
  return p;
}

PeriodicProfile PeriodicProfile::reciprocal() const {
  std::vector<double> s(size());
  for (std::size_t j = 0; j < size(); ++j) {
    if (samples_[j] == 0.0) throw std::domain_error("reciprocal of a vanishing profile");
    s[j] = 1.0 / samples_[j];
  }
  return from_samples(std::move(s));
}

double eval_polynomial(std::span<const double> coeffs, double tau) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * tau + *it;
  return v;
}

double first_moment_weighted_integral(const PeriodicProfile& p) {
  const std::size_t m = p.size();
  const auto c = p.fourier();
  // int_0^1 s e^{2 pi i k s} ds = 1/(2 pi i k) for k != 0.
  Complex acc{};
  for (std::size_t j = 1; j < m; ++j) {
    if (j == m / 2) continue;
    acc += c[j] / Complex{0.0, kTwoPi * static_cast<double>(wavenumber(j, m))};
  }
  return 0.5 * p.mean() - acc.real();
}

// ---------------------------------------------------------------------------

QuasiPeriodic::QuasiPeriodic(std::vector<double> poly, PeriodicProfile periodic)
    : poly_(std::move(poly)), periodic_(std::move(periodic)) {
  if (poly_.empty()) poly_.push_back(0.0);
  if (periodic_.mean() != 0.0) {
    poly_[0] += periodic_.mean();
    periodic_ = periodic_.zero_mean();
  }
}

QuasiPeriodic QuasiPeriodic::from_profile(const PeriodicProfile& p) {
  return QuasiPeriodic({p.mean()}, p.zero_mean());
}

QuasiPeriodic QuasiPeriodic::polynomial(std::vector<double> coeffs, std::size_t m) {
  return QuasiPeriodic(std::move(coeffs), PeriodicProfile::constant(0.0, m));
}

double QuasiPeriodic::operator()(double tau) const {
  return eval_polynomial(poly_, tau) + periodic_(tau - std::floor(tau));
}

QuasiPeriodic QuasiPeriodic::integral() const {
  std::vector<double> p(poly_.size() + 1, 0.0);
  for (std::size_t j = 0; j < poly_.size(); ++j) p[j + 1] = poly_[j] / static_cast<double>(j + 1);
  PeriodicProfile q = periodic_.zero_mean_antiderivative();
  p[0] = -q(0.0);
  return QuasiPeriodic(std::move(p), std::move(q));
}

QuasiPeriodic QuasiPeriodic::derivative() const {
  std::vector<double> p(std::max<std::size_t>(poly_.size(), 2) - 1, 0.0);
  for (std::size_t j = 1; j < poly_.size(); ++j) p[j - 1] = poly_[j] * static_cast<double>(j);
  return QuasiPeriodic(std::move(p), periodic_.derivative());
}

double QuasiPeriodic::drift() const {
  double d = 0.0;
  for (std::size_t j = 1; j < poly_.size(); ++j) d = std::max(d, std::abs(poly_[j]));
  return d;
}

PeriodicProfile QuasiPeriodic::to_profile(double tol) const {
  if (drift() > tol) {
    throw std::domain_error("function is not periodic: polynomial drift " + std::to_string(drift()));
  }
  return periodic_ + poly_[0];
}

QuasiPeriodic QuasiPeriodic::operator+(const QuasiPeriodic& o) const {
  std::vector<double> p(std::max(poly_.size(), o.poly_.size()), 0.0);
  for (std::size_t j = 0; j < poly_.size(); ++j) p[j] += poly_[j];
  for (std::size_t j = 0; j < o.poly_.size(); ++j) p[j] += o.poly_[j];
  return QuasiPeriodic(std::move(p), periodic_ + o.periodic_);
}

QuasiPeriodic QuasiPeriodic::operator-(const QuasiPeriodic& o) const { return *this + o * -1.0; }

QuasiPeriodic QuasiPeriodic::operator*(double s) const {
  std::vector<double> p = poly_;
  for (auto& c : p) c *= s;
  return QuasiPeriodic(std::move(p), periodic_ * s);
}

QuasiPeriodic QuasiPeriodic::operator+(double s) const {
  QuasiPeriodic q = *this;
  q.poly_[0] += s;
  return q;
}

}  // namespace tempohom
