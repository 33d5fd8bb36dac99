#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tempohom/periodic.hpp"

namespace tempohom {

enum class BlueprintKind { Constant, SineInverse, CosineInverse, FourierOfInverse, TabulatedSamples };

/// The 1-periodic permittivity profile eps(tau) generating the modulated
/// coefficient eps_eta(t) = eps(t / eta).
///
/// Strict positivity is checked at construction on a sample grid; a
/// violation throws BlueprintInvalid. Instances are immutable.
class PermittivityBlueprint {
 public:
  static PermittivityBlueprint constant(double c);
  /// eps(tau) = 1 / (2 + sin 2 pi tau)
  static PermittivityBlueprint sine_inverse();
  /// eps(tau) = 1 / (2 + cos 2 pi tau)
  static PermittivityBlueprint cosine_inverse();
  /// 1/eps(tau) = mean + sum_n a_n cos(2 pi n tau) + b_n sin(2 pi n tau), n = 1, 2, ...
  static PermittivityBlueprint fourier_of_inverse(double mean, std::vector<double> cos_coeffs,
                                                  std::vector<double> sin_coeffs);
  /// Values of eps on the uniform grid j/M, M a power of two >= 8. Assumed
  /// band-limited; evaluated off-grid by trigonometric interpolation.
  static PermittivityBlueprint tabulated(std::vector<double> samples);

  /// Parses `sine_inverse`, `cosine_inverse`, `constant:<c>`, `file:<path>`
  /// or `fourier_inverse:<mean>,<a1>,<b1>,<a2>,<b2>,...`.
  static PermittivityBlueprint parse(std::string_view spec);

  BlueprintKind kind() const { return kind_; }
  bool is_constant() const;
  std::string describe() const;

  /// eps(tau mod 1).
  double operator()(double tau) const;
  /// 1 / eps(tau mod 1).
  double inverse(double tau) const;

 private:
  PermittivityBlueprint() = default;
  void validate() const;

  BlueprintKind kind_ = BlueprintKind::Constant;
  double constant_ = 1.0;
  double inv_mean_ = 0.0;
  std::vector<double> inv_cos_, inv_sin_;
  PeriodicProfile table_;
  std::string label_;
};

/// eps(tau mod 1); throws BlueprintInvalid on a non-positive value.
double eval_eps(const PermittivityBlueprint& bp, double tau);

/// Profile of tau -> 1/eps(tau) on M points. Its mean is int_0^1 eps^{-1}.
PeriodicProfile profile_of_inverse(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);

/// Profile of tau -> eps(tau) on M points.
PeriodicProfile profile_of_eps(const PermittivityBlueprint& bp, std::size_t m = kDefaultCellGrid);

/// tau -> int_0^tau p(s) ds as linear drift plus periodic remainder.
QuasiPeriodic antiderivative(const PeriodicProfile& p);

/// Reads one sample per line (blank lines and '#' comments skipped).
std::vector<double> read_samples_file(const std::string& path);

}  // namespace tempohom
