#include "fft_plans.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace benjamin::detail {
namespace {

enum class Kind { r2c, c2r, c2c };

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(Kind kind, int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    double* real = fftw_alloc_real(n);
    fftw_complex* spec = fftw_alloc_complex(n);
    fftw_complex* spec2 = fftw_alloc_complex(n);
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::r2c: plan = fftw_plan_dft_r2c_1d(n, real, spec, flags); break;
      case Kind::c2r: plan = fftw_plan_dft_c2r_1d(n, spec, real, flags); break;
      case Kind::c2c:
        plan = fftw_plan_dft_1d(n, spec, spec2, FFTW_FORWARD, flags);
        break;
    }
    fftw_free(real);
    fftw_free(spec);
    fftw_free(spec2);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Kind, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void r2c(int n, const double* in, std::complex<double>* out) {
  fftw_execute_dft_r2c(cache().get(Kind::r2c, n), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void c2r(int n, std::complex<double>* in, double* out) {
  fftw_execute_dft_c2r(cache().get(Kind::c2r, n), reinterpret_cast<fftw_complex*>(in),
                       out);
}

void c2c_forward(int n, const std::complex<double>* in, std::complex<double>* out) {
  fftw_execute_dft(cache().get(Kind::c2c, n),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace benjamin::detail
