#include "qze/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <utility>

namespace qze {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Spectral::Spectral(std::size_t n) : n_(n) {
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  // FFTW_ESTIMATE keeps the plan, and therefore the output bits, identical run to run.
  forward_plan_ = fftw_plan_dft_1d(len, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(len, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Spectral::~Spectral() { release(); }

Spectral::Spectral(Spectral&& other) noexcept
    : n_(other.n_),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

Spectral& Spectral::operator=(Spectral&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    backward_plan_ = std::exchange(other.backward_plan_, nullptr);
  }
  return *this;
}

void Spectral::release() noexcept {
  if (forward_plan_ != nullptr || backward_plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (backward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  }
  forward_plan_ = backward_plan_ = nullptr;
  if (buffer_) fftw_free(buffer_);
  buffer_ = nullptr;
}

void Spectral::forward(std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.end(), buffer_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  std::copy(buffer_, buffer_ + n_, out.begin());
}

void Spectral::backward(std::span<const std::complex<double>> in,
                        std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.end(), buffer_);
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = buffer_[j] * inv_n;
}

Spectral& thread_spectral(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Spectral>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Spectral>(n);
  return *slot;
}

}  // namespace qze
