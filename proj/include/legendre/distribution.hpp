// distribution.hpp
//
// Distributional comparison between the prime family and the random model:
// sup-norm samples on both sides, finite-dimensional samples, increment
// moments over primes, and the two-sample Kolmogorov-Smirnov distance.
//
// Every sampler is deterministic given its parameters; the metadata record
// carried by a sample is sufficient to regenerate it bit-identically.

#ifndef LEGENDRE_DISTRIBUTION_HPP
#define LEGENDRE_DISTRIBUTION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "legendre/number_theory.hpp"

namespace legendre {

// Conditioning on the model's X_{-1} (mirrors the prime residue classes).
enum class SignClass { random_sign, plus_one, minus_one };

struct EmpiricalSample {
  std::vector<double> values;
  nlohmann::json metadata;  // full generation parameters, incl. "source"
};

// One value per prime p in [Q, 2Q]: sup_t |f_p(t)| = max_j |vertices[j]|.
EmpiricalSample supnorm_samples_primes(std::uint64_t Q,
                                       PrimeClass cls = PrimeClass::all);

// `count` independent draws of the grid maximum of |F_{X,N}|.  Requires
// grid_size >= 2N+2 so the transform route applies; the default callers
// oversample 4x beyond that.
EmpiricalSample supnorm_samples_model(std::uint32_t N, std::size_t grid_size,
                                      std::size_t count, std::uint64_t seed,
                                      SignClass sign = SignClass::random_sign);

// Two-sample Kolmogorov-Smirnov statistic in [0, 1].
double ks_distance(const EmpiricalSample& a, const EmpiricalSample& b);

struct SampleMatrix {
  std::vector<double> points;  // column labels t_1..t_k
  std::size_t rows = 0;
  std::vector<double> data;    // row-major, rows x points.size()
  nlohmann::json metadata;

  double at(std::size_t r, std::size_t c) const {
    return data[r * points.size() + c];
  }
};

SampleMatrix finite_dim_samples_primes(std::uint64_t Q,
                                       std::span<const double> points,
                                       PrimeClass cls = PrimeClass::all);

SampleMatrix finite_dim_samples_model(std::uint32_t N, std::size_t count,
                                      std::uint64_t seed,
                                      std::span<const double> points,
                                      SignClass sign = SignClass::random_sign);

// (1/#primes) sum_{p in [Q,2Q]} |f_p(t) - f_p(s)|^power via exact paths.
// `reflected` evaluates at the per-prime mirror times
// ((p-1)/p - t, (p-1)/p - s); on the p = 3 mod 4 subfamily the path is
// even about (p-1)/(2p), so the reflected moment matches exactly.
double prime_increment_moment(std::uint64_t Q, double s, double t,
                              unsigned power,
                              PrimeClass cls = PrimeClass::all,
                              bool reflected = false);

}  // namespace legendre

#endif  // LEGENDRE_DISTRIBUTION_HPP
