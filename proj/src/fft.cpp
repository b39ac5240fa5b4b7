#include "liouville/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace liouville::fft {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : n(n), data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  std::size_t n;
  fftw_complex* data;
};

// The FFTW planner is not thread safe; execution with the new-array interface is.
// Plans are made once per (size, sign) on fftw_malloc'd arrays, so every later
// execution sees the same alignment and therefore the same codelets.
std::mutex planner_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

fftw_plan plan_for(std::size_t n, int sign) {
  std::lock_guard lock(planner_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  FftwBuffer in(n), out(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
  plan_cache.emplace(key, p);
  return p;
}

std::vector<cplx> transform(std::span<const cplx> x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  fftw_plan p = plan_for(n, sign);
  FftwBuffer in(n), out(n);
  std::memcpy(in.data, x.data(), n * sizeof(fftw_complex));
  fftw_execute_dft(p, in.data, out.data);
  std::vector<cplx> result(n);
  std::memcpy(static_cast<void*>(result.data()), out.data, n * sizeof(fftw_complex));
  return result;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) { return transform(x, FFTW_FORWARD); }

std::vector<cplx> backward(std::span<const cplx> x) { return transform(x, FFTW_BACKWARD); }

}  // namespace liouville::fft
