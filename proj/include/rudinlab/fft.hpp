#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace rudinlab {

/// In-place synthesis transform out[k] = sum_m in[m] exp(+2 pi i m k / n),
/// backed by FFTW. Owns an aligned buffer; one instance per worker thread.
class SynthesisFft {
 public:
  explicit SynthesisFft(std::size_t n);
  ~SynthesisFft();
  SynthesisFft(const SynthesisFft&) = delete;
  SynthesisFft& operator=(const SynthesisFft&) = delete;
  SynthesisFft(SynthesisFft&& other) noexcept;
  SynthesisFft& operator=(SynthesisFft&& other) noexcept;

  std::size_t size() const { return n_; }
  std::span<std::complex<double>> buffer();
  void clear();
  void execute();

 private:
  std::size_t n_ = 0;
  void* data_ = nullptr;
  void* plan_ = nullptr;
};

}  // namespace rudinlab
