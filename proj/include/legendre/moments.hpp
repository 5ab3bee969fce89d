// moments.hpp
//
// Joint moments of the random Fourier series via the divisor-convolution
// series
//
//   M_{X,+}(n) = (1/pi^n) sum_{a>=1} B_{n,t,+}(a^2)/a^2,
//   B_{n,t,+}(a) = sum_{a_1...a_k = a} prod_i
//                    sum_{b_{i,1}...b_{i,n_i} = a_i} prod_j sin(2 pi b_{i,j} t_i),
//
// the minus variant with 1-cos(2 pi b t) factors, and the combined moment
// as the average of the two.  The truncated series carries a certified
// tail bound from the envelope |B_+(a)| <= d_n(a), |B_-(a)| <= 2^n d_n(a).
//
// Also: exact small-N fourth increment moments via the square-support
// identity, and empirical joint moments over the prime family.

#ifndef LEGENDRE_MOMENTS_HPP
#define LEGENDRE_MOMENTS_HPP

#include <cstdint>
#include <vector>

#include "legendre/number_theory.hpp"

namespace legendre {

enum class Variant { plus, minus, combined };

// A joint-moment specification: points t_i with exponents n_i.  The
// (t, n) pairs are stored sorted by t (the defining product is symmetric
// in the pairs, so this canonical form changes nothing); duplicate points
// and all-zero exponents are rejected.
struct MomentRequest {
  std::vector<double> points;
  std::vector<unsigned> exponents;
  Variant variant = Variant::combined;
  // When nonzero, every inner factor b is restricted to b <= factor_cap;
  // this matches the series against a truncated model F_{X,N} exactly.
  std::uint32_t factor_cap = 0;

  MomentRequest(std::vector<double> t, std::vector<unsigned> n,
                Variant v = Variant::combined, std::uint32_t cap = 0);

  std::size_t k() const { return points.size(); }
  unsigned total_degree() const;
};

struct MomentValue {
  double value = 0.0;
  std::uint64_t truncation = 0;  // series summed over a <= A
  double tail_bound = 0.0;       // certified bound on the omitted tail
};

inline constexpr std::uint64_t kDefaultSeriesTruncation = 1'000'000;
inline constexpr std::uint64_t kBCoefficientLimit = 1'000'000'000;

// B_{n,t,+}(a) or B_{n,t,-}(a); variant must not be `combined`.
double b_coefficient(Variant variant, const MomentRequest& request,
                     std::uint64_t a);

MomentValue theoretical_moment(const MomentRequest& request, std::uint64_t A);

// Exact E|F_{X,N}(t) - F_{X,N}(s)|^4 under the full sign algebra
// (X_{-1} uniform on ±1), by expanding the square of the partial series
// and keeping the index pairs whose product is a positive perfect square.
double increment_fourth_moment_exact(std::uint32_t N, double s, double t);

inline constexpr std::uint32_t kExactFourthMomentLimit = 512;

enum class PathMode { exact_path, polya };

// Average of prod_i f_p(t_i)^{n_i} over primes p in [Q, 2Q]; the variant
// selects p = 1 mod 4 (plus), p = 3 mod 4 (minus), or all primes
// (combined).  polya mode substitutes the truncated expansion at Z.
double empirical_moment(const MomentRequest& request, std::uint64_t Q,
                        PathMode mode = PathMode::exact_path,
                        double polya_z = 0.0);

struct MomentGap {
  double gap = 0.0;
  double empirical = 0.0;
  MomentValue theoretical;
};

MomentGap moment_gap(const MomentRequest& request, std::uint64_t Q,
                     std::uint64_t A = kDefaultSeriesTruncation,
                     PathMode mode = PathMode::exact_path,
                     double polya_z = 0.0);

// Certified upper bound on sum_{a > A} d_n(a^2)/a^2 (Euler-product
// majorant, minimized over a short exponent grid).  Exposed for the
// growth-envelope checks.
double divisor_square_tail(unsigned n, std::uint64_t A);

}  // namespace legendre

#endif  // LEGENDRE_MOMENTS_HPP
