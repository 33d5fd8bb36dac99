#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tempohom/fft.hpp"

namespace tempohom {

/// Default number of samples on the unit period used for cell problems.
inline constexpr std::size_t kDefaultCellGrid = 4096;

/// A real 1-periodic function on [0,1) sampled on a uniform grid of M points,
/// together with its discrete Fourier representation.
///
/// The Fourier coefficients are normalized, c_k = (1/M) sum_j f_j e^{-2 pi i jk/M},
/// stored in FFT order. Index 0 is kept at zero; the average lives in mean().
class PeriodicProfile {
 public:
  PeriodicProfile() = default;

  /// Samples f(j/M), j = 0..M-1. M must be a power of two, at least 8.
  static PeriodicProfile from_samples(std::vector<double> samples);
  static PeriodicProfile constant(double value, std::size_t m);
  /// Builds a profile from normalized coefficients in FFT order; the
  /// coefficient at index 0 is taken as the mean.
  static PeriodicProfile from_coefficients(std::vector<Complex> coeffs);

  std::size_t size() const { return samples_.size(); }
  double mean() const { return mean_; }
  std::span<const double> samples() const { return samples_; }
  std::span<const Complex> fourier() const { return coeffs_; }

  /// Trigonometric interpolation at an arbitrary tau (reduced modulo 1).
  double operator()(double tau) const;

  /// Grid point tau_j = j/M.
  double node(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(size()); }

  PeriodicProfile derivative() const;
  PeriodicProfile zero_mean() const;
  /// Zero-mean antiderivative: c_k -> c_k / (2 pi i k).
  PeriodicProfile zero_mean_antiderivative() const;

  /// Largest |f(tau_j)| over the grid.
  double sup_norm() const;

  PeriodicProfile operator+(const PeriodicProfile& o) const;
  PeriodicProfile operator-(const PeriodicProfile& o) const;
  /// Pointwise product on the sample grid.
  PeriodicProfile operator*(const PeriodicProfile& o) const;
  PeriodicProfile operator*(double s) const;
  PeriodicProfile operator+(double s) const;
  /// Pointwise reciprocal; all samples must be nonzero.
  PeriodicProfile reciprocal() const;

 private:
  void refresh_bandwidth();

  std::vector<double> samples_;
  std::vector<Complex> coeffs_;
  double mean_ = 0.0;
  // Highest wavenumber carrying a non-negligible coefficient.
  std::size_t bandwidth_ = 0;
};

/// A function on the real line of the form
///   F(tau) = p(tau) + P(tau),
/// with p a polynomial and P a zero-mean 1-periodic profile. This is the
/// class closed under the iterated integrals tau -> int_0^tau F ds, which
/// appear in all cell-problem formulas; the non-periodic drift is carried
/// exactly in the polynomial.
class QuasiPeriodic {
 public:
  QuasiPeriodic() = default;
  QuasiPeriodic(std::vector<double> poly, PeriodicProfile periodic);

  /// Splits a periodic profile into its mean (constant polynomial) and
  /// zero-mean part.
  static QuasiPeriodic from_profile(const PeriodicProfile& p);
  /// Pure polynomial sum_j c_j tau^j; M fixes the grid of the (zero) periodic part.
  static QuasiPeriodic polynomial(std::vector<double> coeffs, std::size_t m);

  std::span<const double> poly() const { return poly_; }
  const PeriodicProfile& periodic() const { return periodic_; }
  std::size_t grid_size() const { return periodic_.size(); }

  double operator()(double tau) const;

  /// tau -> int_0^tau F(s) ds, exact termwise.
  QuasiPeriodic integral() const;
  QuasiPeriodic derivative() const;

  /// Largest absolute polynomial coefficient of degree >= 1.
  double drift() const;
  /// Converts to a periodic profile; the drift must be below `tol`.
  PeriodicProfile to_profile(double tol = 1e-10) const;

  QuasiPeriodic operator+(const QuasiPeriodic& o) const;
  QuasiPeriodic operator-(const QuasiPeriodic& o) const;
  QuasiPeriodic operator*(double s) const;
  QuasiPeriodic operator+(double s) const;

 private:
  std::vector<double> poly_;
  PeriodicProfile periodic_;
};

/// Evaluates sum_j c_j tau^j.
double eval_polynomial(std::span<const double> coeffs, double tau);

/// int_0^1 (1 - s) p(s) ds computed from the Fourier coefficients of p.
double first_moment_weighted_integral(const PeriodicProfile& p);

}  // namespace tempohom
