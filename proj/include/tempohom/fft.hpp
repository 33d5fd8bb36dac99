#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace tempohom {

using Complex = std::complex<double>;

/// Thin wrapper over a pair of FFTW plans for one transform length.
///
/// Plans are created once per length and cached for the lifetime of the
/// process; execution uses the new-array interface, so a single instance can
/// be shared between threads.
class Fft {
 public:
  /// Returns the cached transform for length `n`.
  static const Fft& of_size(std::size_t n);

  std::size_t size() const { return n_; }

  /// Unnormalized forward DFT: out_k = sum_j in_j exp(-2 pi i jk/n).
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  /// Inverse DFT including the 1/n factor, so inverse(forward(x)) == x.
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  ~Fft();

 private:
  explicit Fft(std::size_t n);

  std::size_t n_;
  void* forward_plan_;
  void* backward_plan_;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace tempohom
