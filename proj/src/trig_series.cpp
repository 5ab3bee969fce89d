#include "legendre/trig_series.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace legendre {

namespace {

// One cached FFTW plan per transform length.  Plans are created with
// FFTW_ESTIMATE so the chosen algorithm depends only on the length, which
// keeps outputs bit-reproducible across runs.  Execution through the
// new-array interface is thread-safe; creation is serialized.
class PlanCache {
 public:
  fftw_plan get(std::size_t length) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(length);
    if (it != plans_.end()) return it->second;
    fftw_complex* in = fftw_alloc_complex(length);
    fftw_complex* out = fftw_alloc_complex(length);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(length), in, out,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    // Keep the buffers alive: new-array execution requires the same
    // alignment class as the ones the plan was created with.
    buffers_.push_back(in);
    buffers_.push_back(out);
    plans_.emplace(length, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::size_t, fftw_plan> plans_;
  std::vector<fftw_complex*> buffers_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer alloc_complex(std::size_t n) {
  return FftwBuffer(fftw_alloc_complex(n));
}

}  // namespace

TrigGridValues trig_series_on_grid(std::span<const double> coeff,
                                   std::size_t grid_points) {
  const std::size_t G = grid_points;
  const std::size_t N = coeff.size();
  if (G < 2) throw std::invalid_argument("trig_series_on_grid: grid too small");
  if (N >= G)
    throw std::invalid_argument(
        "trig_series_on_grid: need more grid points than terms");

  fftw_plan plan = plan_cache().get(G);
  FftwBuffer in = alloc_complex(G);
  FftwBuffer out = alloc_complex(G);
  for (std::size_t j = 0; j < G; ++j) in[j][0] = in[j][1] = 0.0;
  for (std::size_t n = 1; n <= N; ++n) in[n][0] = coeff[n - 1];

  fftw_execute_dft(plan, in.get(), out.get());

  TrigGridValues values;
  values.re.resize(G);
  values.im.resize(G);
  for (std::size_t j = 0; j < G; ++j) {
    values.re[j] = out[j][0];
    values.im[j] = out[j][1];
  }
  return values;
}

}  // namespace legendre
