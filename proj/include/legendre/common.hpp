// common.hpp
//
// Shared plumbing for the Legendre-path laboratory: error types, accurate
// phase reduction for sin/cos of rational multiples, compensated summation,
// counter-based keyed random values, and fixed-chunk parallel map/reduce.

#ifndef LEGENDRE_COMMON_HPP
#define LEGENDRE_COMMON_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace legendre {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Thrown when an input exceeds a documented desk-scale guard.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// -----------------------------------------------------------------------
// Keyed counter-based random values.
//
// Every random decision in the artifact is a pure function of a 64-bit
// seed and a 64-bit semantic key (a prime, a trial index, ...), so results
// do not depend on evaluation order or thread scheduling.
// -----------------------------------------------------------------------

// splitmix64 finalizer (Stafford mix13); bijective avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Decorrelated 64-bit value for a (seed, key) pair.
inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t key) {
  return mix64(mix64(seed ^ 0x9e3779b97f4a7c15ULL) + key * 0xd1342543de82ef95ULL);
}

// A ±1 sign for a (seed, key) pair.
inline int keyed_sign(std::uint64_t seed, std::uint64_t key) {
  return (keyed_u64(seed, key) >> 63) ? -1 : +1;
}

// Derives an independent sub-stream seed (e.g. per Monte Carlo trial).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return keyed_u64(seed ^ 0x517cc1b727220a95ULL, index);
}

// -----------------------------------------------------------------------
// Accurate evaluation of sin(2*pi*b*t) and 1-cos(2*pi*b*t) for integer b.
//
// For b up to ~2^62 the product b*t overflows the double mantissa and the
// naive phase is garbage.  We reduce b*t mod 1 exactly: write t = m * 2^-k
// (m = mantissa integer), compute (b*m) mod 2^k in 128-bit arithmetic, and
// rescale.  The result is the true fractional part up to one rounding.
// -----------------------------------------------------------------------

inline double frac_mult(std::uint64_t b, double t) {
  if (b == 0 || t == 0.0) return 0.0;
  int e;
  double m = std::frexp(t, &e);         // t = m * 2^e, m in [0.5, 1)
  int shift = 53 - e;                   // t = mi / 2^shift
  if (shift <= 0) return 0.0;           // t is an integer
  if (shift > 120) {
    // t <= 2^-67: b*t is tiny and a direct product is accurate enough.
    double x = static_cast<double>(b) * t;
    return x - std::floor(x);
  }
  auto mi = static_cast<std::uint64_t>(std::ldexp(m, 53));
  unsigned __int128 prod = static_cast<unsigned __int128>(b) * mi;
  unsigned __int128 mask = (static_cast<unsigned __int128>(1) << shift) - 1;
  return std::ldexp(static_cast<double>(prod & mask), -shift);
}

// sin(2*pi*x) for x in [0,1), with exact zeros at x = 0 and x = 1/2.
inline double sin2pi_frac(double x) {
  double sign = 1.0;
  if (x >= 0.5) {
    sign = -1.0;
    x -= 0.5;                           // exact (Sterbenz)
  }
  if (x > 0.25) x = 0.5 - x;            // exact
  return sign * std::sin(kTwoPi * x);
}

// cos(2*pi*x) for x in [0,1).
inline double cos2pi_frac(double x) {
  if (x >= 0.5) x = 1.0 - x;            // exact
  if (x > 0.25) return -std::cos(kTwoPi * (0.5 - x));
  return std::cos(kTwoPi * x);
}

// 1 - cos(2*pi*x) = 2*sin(pi*x)^2 for x in [0,1); exact zero at x = 0.
inline double one_minus_cos2pi_frac(double x) {
  double y = (x > 0.5) ? 1.0 - x : x;   // sin(pi*x) is symmetric about 1/2
  double s = std::sin(kPi * y);
  return 2.0 * s * s;
}

inline double sin2pi_mult(std::uint64_t b, double t) {
  return sin2pi_frac(frac_mult(b, t));
}

inline double one_minus_cos2pi_mult(std::uint64_t b, double t) {
  return one_minus_cos2pi_frac(frac_mult(b, t));
}

// -----------------------------------------------------------------------
// Compensated (Kahan) accumulation.
// -----------------------------------------------------------------------

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// -----------------------------------------------------------------------
// Fixed-chunk parallel map.
//
// The index range [0, n) is split into chunks of a fixed size chosen by the
// caller (never by the thread count).  Workers grab chunk indices from an
// atomic counter; per-chunk results land in a vector indexed by chunk, and
// the caller reduces that vector in chunk order.  Numeric results are then
// identical for any worker count.
// -----------------------------------------------------------------------

inline std::size_t worker_count() {
  if (const char* env = std::getenv("LEGENDRE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

template <class T, class ChunkFn>
std::vector<T> map_chunks(std::uint64_t n, std::uint64_t chunk_size, ChunkFn&& fn) {
  if (n == 0) return {};
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t nchunks = (n + chunk_size - 1) / chunk_size;
  std::vector<T> results(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;

  auto work = [&]() {
    for (;;) {
      std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) return;
      std::uint64_t lo = c * chunk_size;
      std::uint64_t hi = std::min(n, lo + chunk_size);
      try {
        results[c] = fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };

  std::size_t nw = static_cast<std::size_t>(
      std::min<std::uint64_t>(worker_count(), nchunks));
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(nw);
    for (std::size_t i = 0; i < nw; ++i) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }
  if (err) std::rethrow_exception(err);
  return results;
}

// Ordered reduction of per-chunk Kahan partial sums.
inline double reduce_ordered(const std::vector<double>& parts) {
  KahanSum acc;
  for (double x : parts) acc.add(x);
  return acc.value();
}

// Fixed 17-significant-digit decimal formatting; round-trips any double.
std::string format_double(double x);

}  // namespace legendre

#endif  // LEGENDRE_COMMON_HPP
