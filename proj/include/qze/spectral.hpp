#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qze {

/// Owns FFTW plans and an aligned scratch buffer for one transform length.
/// forward() is unnormalized, backward() divides by n, so backward(forward(v)) == v.
/// One instance must not be used from two threads at once.
class Spectral {
 public:
  explicit Spectral(std::size_t n);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;
  Spectral(Spectral&& other) noexcept;
  Spectral& operator=(Spectral&& other) noexcept;

  std::size_t size() const { return n_; }
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  // in-place variants
  void forward(std::span<std::complex<double>> data) { forward(data, data); }
  void backward(std::span<std::complex<double>> data) { backward(data, data); }

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  std::complex<double>* buffer_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Per-thread cached transform for free functions that need a spectral step.
Spectral& thread_spectral(std::size_t n);

}  // namespace qze
