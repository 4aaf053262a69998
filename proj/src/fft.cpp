#include "frontlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace frontlab::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_complex* a = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const Complex> in, std::span<Complex> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("fft: size mismatch");
  if (static_cast<const void*>(in.data()) == static_cast<const void*>(out.data()))
    throw std::invalid_argument("fft: in-place transform not supported");
  const int n = static_cast<int>(in.size());
  fftw_plan plan = cache().get(n, sign);
  // c2c out-of-place plans preserve their input.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) {
  execute(in, out, FFTW_FORWARD);
}

void backward(std::span<const Complex> in, std::span<Complex> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace frontlab::fft
