#include "qwle/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace qwle::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Owns one plan and its buffers; planning and destruction take the planner lock.
struct Plan {
  fftw_plan plan = nullptr;
  template <class MakePlan>
  explicit Plan(MakePlan&& make) {
    std::lock_guard lock(planner_mutex());
    plan = make();
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    if (plan != nullptr) fftw_destroy_plan(plan);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
  Plan p([&] {
    return fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  });
  fftw_execute(p.plan);
  std::vector<std::complex<double>> full(static_cast<std::size_t>(n));
  std::copy(out.begin(), out.end(), full.begin());
  for (int k = n / 2 + 1; k < n; ++k) full[k] = std::conj(full[n - k]);
  return full;
}

std::vector<std::complex<double>> transform(std::span<const std::complex<double>> x, int sign) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  std::vector<std::complex<double>> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size());
  Plan p([&] {
    return fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  });
  fftw_execute(p.plan);
  return out;
}

std::vector<double> dct2(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  std::vector<double> in(x.begin(), x.end());
  std::vector<double> out(x.size());
  Plan p([&] { return fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_REDFT10, FFTW_ESTIMATE); });
  fftw_execute(p.plan);
  return out;
}

}  // namespace qwle::fft
