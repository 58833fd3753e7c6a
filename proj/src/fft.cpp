#include "rudinlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <utility>

namespace rudinlab {

namespace {
// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

SynthesisFft::SynthesisFft(std::size_t n) : n_(n) {
  auto* buf = fftw_alloc_complex(n);
  if (buf == nullptr) throw std::bad_alloc();
  data_ = buf;
  std::lock_guard lock(planner_mutex());
  // FFTW_ESTIMATE keeps plan selection independent of timing, so every worker
  // gets the same algorithm and identical rounding.
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan_ == nullptr) {
    fftw_free(buf);
    throw std::bad_alloc();
  }
}

SynthesisFft::~SynthesisFft() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  if (data_ != nullptr) fftw_free(data_);
}

SynthesisFft::SynthesisFft(SynthesisFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      data_(std::exchange(other.data_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr)) {}

SynthesisFft& SynthesisFft::operator=(SynthesisFft&& other) noexcept {
  if (this != &other) {
    std::swap(n_, other.n_);
    std::swap(data_, other.data_);
    std::swap(plan_, other.plan_);
  }
  return *this;
}

std::span<std::complex<double>> SynthesisFft::buffer() {
  return {reinterpret_cast<std::complex<double>*>(data_), n_};
}

void SynthesisFft::clear() {
  auto b = buffer();
  std::fill(b.begin(), b.end(), std::complex<double>{});
}

void SynthesisFft::execute() {
  auto* buf = static_cast<fftw_complex*>(data_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_), buf, buf);
}

}  // namespace rudinlab
