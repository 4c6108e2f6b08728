#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace ninls::detail {
namespace {

enum class Kind { full2d, along_x, along_y, one_d };

using Key = std::tuple<Kind, int, int, int>;

// Planning is not thread safe in FFTW, execution with new-array is.
// Plans are created once per shape on a scratch buffer and reused with
// fftw_execute_dft; FFTW_UNALIGNED lets them run on any std::complex buffer.
struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(Kind kind, int nx, int ny, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    Key key{kind, nx, ny, sign};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    const int total = (kind == Kind::one_d) ? nx : nx * ny;
    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(total));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    switch (kind) {
      case Kind::full2d:
        p = fftw_plan_dft_2d(nx, ny, buf, buf, sign, flags);
        break;
      case Kind::along_y: {
        int n[1] = {ny};
        p = fftw_plan_many_dft(1, n, nx, buf, nullptr, 1, ny, buf, nullptr, 1, ny, sign,
                               flags);
        break;
      }
      case Kind::along_x: {
        int n[1] = {nx};
        p = fftw_plan_many_dft(1, n, ny, buf, nullptr, ny, 1, buf, nullptr, ny, 1, sign,
                               flags);
        break;
      }
      case Kind::one_d:
        p = fftw_plan_dft_1d(nx, buf, buf, sign, flags);
        break;
    }
    fftw_free(buf);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(Kind kind, cplx* data, int nx, int ny, int sign) {
  fftw_plan p = cache().get(kind, nx, ny, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace

void fft2d(cplx* data, int nx, int ny, int sign) { run(Kind::full2d, data, nx, ny, sign); }
void fft_x(cplx* data, int nx, int ny, int sign) { run(Kind::along_x, data, nx, ny, sign); }
void fft_y(cplx* data, int nx, int ny, int sign) { run(Kind::along_y, data, nx, ny, sign); }
void fft1d(cplx* data, int n, int sign) { run(Kind::one_d, data, n, 1, sign); }

}  // namespace ninls::detail
