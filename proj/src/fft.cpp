#include "mhdbox/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mhdbox {

namespace {

// One FFTW plan pair per grid size, planned once with FFTW_ESTIMATE so plan
// selection never depends on runtime timing (trajectories must be
// reproducible run to run).  Executed single threaded; plans accept
// arbitrarily aligned buffers.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

PlanPair get_plans(int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::size_t count = static_cast<std::size_t>(n) * n * n;
  fftw_complex* in = fftw_alloc_complex(count);
  fftw_complex* out = fftw_alloc_complex(count);
  PlanPair p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  // samples are stored x-fastest, i.e. the array is a[z][y][x]
  p.fwd = fftw_plan_dft_3d(n, n, n, in, out, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft_3d(n, n, n, in, out, FFTW_BACKWARD, flags);
  fftw_free(in);
  fftw_free(out);
  cache[n] = p;
  return p;
}

}  // namespace

ScalarFieldK transform(const ScalarFieldR& f) {
  const int n = f.grid->n;
  ScalarFieldK out(f.grid);
  std::vector<cplx> in(f.grid->size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = f.v[i];
  PlanPair p = get_plans(n);
  fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.a.data()));
  return out;
}

ScalarFieldR inverse_transform(const ScalarFieldK& f) {
  const int n = f.grid->n;
  ScalarFieldR out(f.grid);
  std::vector<cplx> tmp(f.grid->size());
  PlanPair p = get_plans(n);
  fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(
                              const_cast<cplx*>(f.a.data())),
                   reinterpret_cast<fftw_complex*>(tmp.data()));
  const double scale = 1.0 / static_cast<double>(f.grid->size());
  for (std::size_t i = 0; i < tmp.size(); ++i) out.v[i] = tmp[i].real() * scale;
  return out;
}

VectorFieldK transform(const VectorFieldR& f) {
  VectorFieldK out;
  for (int i = 0; i < 3; ++i) out.c[i] = transform(f[i]);
  return out;
}

VectorFieldR inverse_transform(const VectorFieldK& f) {
  VectorFieldR out;
  for (int i = 0; i < 3; ++i) out.c[i] = inverse_transform(f[i]);
  return out;
}

}  // namespace mhdbox
