// random_model.hpp
//
// Rademacher random completely multiplicative functions and the random
// Fourier series built from them:
//
//   F_{X,N}(t) = (1/pi) sum_{n<=N} X_n sin(2 pi n t)/n          X_{-1} = +1
//   F_{X,N}(t) = (1/pi) sum_{n<=N} X_n (1-cos(2 pi n t))/n      X_{-1} = -1
//
// Signs are drawn from counter-based streams keyed by (seed, prime), so a
// sample is reproducible bit-for-bit and the sign at a prime never depends
// on the cutoff P or on thread scheduling.

#ifndef LEGENDRE_RANDOM_MODEL_HPP
#define LEGENDRE_RANDOM_MODEL_HPP

#include <cstdint>
#include <vector>

#include "legendre/number_theory.hpp"

namespace legendre {

inline constexpr std::uint64_t kPrimeCutoffLimit = 100'000'000;
inline constexpr std::uint64_t kFactorizationLimit = 1'000'000'000'000ULL;

// Key reserved for X_{-1}; primes never collide with it.
inline constexpr std::uint64_t kMinusOneKey = ~0ULL;

struct RademacherSample {
  std::uint64_t seed = 0;
  std::uint64_t prime_cutoff = 0;
  int sign_minus_one = +1;
  std::vector<std::uint32_t> primes;  // primes <= prime_cutoff
  std::vector<std::int8_t> signs;     // aligned with primes

  // Sign at an arbitrary prime q, computed from the keyed stream; agrees
  // with the stored table for q <= prime_cutoff by construction.
  int sign_at_prime(std::uint64_t q) const { return keyed_sign(seed, q); }
};

RademacherSample sample_signs(std::uint64_t seed, std::uint64_t P);

// X_n for a single nonzero integer: product over prime powers, exponent
// parity only; X_{-n} = X_{-1} X_n.  Factors by trial division.
int eval_multiplicative(const RademacherSample& sample, std::int64_t n);

// X_1..X_N as a dense table: keyed signs on primes, completed along
// smallest prime factors.  Entry [n] is X_n; [0] is unused.
std::vector<std::int8_t> multiplicative_values(std::uint64_t seed,
                                               std::uint32_t N,
                                               const SpfTable& spf);

double eval_partial_series(const RademacherSample& sample, std::uint32_t N,
                           double t);

struct ModelPath {
  std::uint32_t n_terms = 0;
  int sign_minus_one = +1;
  std::uint64_t seed = 0;
  std::vector<double> grid;    // t_j = j/(grid_size-1)
  std::vector<double> values;  // F_{X,N}(t_j)
};

// Uniform-grid sample path.  For grid_size >= 2N+2 the values come from a
// length-(grid_size-1) trigonometric transform; otherwise direct summation.
// The two routes agree to 1e-9 absolute.
ModelPath sample_model_path(const RademacherSample& sample, std::uint32_t N,
                            std::size_t grid_size);

struct McMoment {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Monte Carlo estimate of E|F_{X,N}(t) - F_{X,N}(s)|^4 with independent
// samples per trial (streams keyed by (seed, trial)).
McMoment increment_fourth_moment_mc(std::uint32_t N, double s, double t,
                                    std::uint64_t trials, std::uint64_t seed);

// Shared read-only state for tight Monte Carlo loops over samples at a
// fixed truncation: primes and smallest prime factors up to N.
struct ModelContext {
  std::uint32_t n_terms;
  SpfTable spf;

  explicit ModelContext(std::uint32_t N);

  // Fills X_1..X_N for the trial stream derived from (seed, trial) and
  // returns the trial's X_{-1}.
  int fill_trial_values(std::uint64_t seed, std::uint64_t trial,
                        std::vector<std::int8_t>& values) const;
};

}  // namespace legendre

#endif  // LEGENDRE_RANDOM_MODEL_HPP
