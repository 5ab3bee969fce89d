// legendre_path.hpp
//
// The Legendre path f_p: the polygon on [0,1] interpolating the normalized
// character sums S_p(j)/sqrt(p), its truncated Fourier (Polya) expansion,
// its exact Fourier coefficients, and sup-norm / symmetry statistics.
//
// Vertex convention: p+1 vertices at t = j/p for j = 0..p, with
// S_p(p) = S_p(p-1) = 0, so the last segment is flat and f_p(1) = 0.

#ifndef LEGENDRE_LEGENDRE_PATH_HPP
#define LEGENDRE_LEGENDRE_PATH_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "legendre/number_theory.hpp"

namespace legendre {

struct LegendrePath {
  PrimeRecord prime;
  std::vector<double> vertices;  // p+1 entries, vertices[j] = S_p(j)/sqrt(p)
};

LegendrePath build_path(std::uint64_t p);
LegendrePath build_path(const SymbolTable& table);

// Piecewise-linear interpolation of the vertex polygon at t in [0,1].
// At t = j/p (up to the rounding slop of p*t) this returns vertices[j]
// exactly.
double eval_path(const LegendrePath& path, double t);

// Truncated Fourier expansion of f_p:
//   (1/pi) sum_{1<=a<=Z} chi_p(a) sin(2 pi a t)/a          p = 1 mod 4,
//   (1/pi) sum_{1<=a<=Z} chi_p(a) (1-cos(2 pi a t))/a      p = 3 mod 4,
// with truncation error O(1/sqrt(p) + sqrt(p) log p / Z).
double polya_approx(const SymbolTable& table, double t, double Z);
double polya_approx(std::uint64_t p, double t, double Z);

// Calibrated constant for the truncation-error envelope; the asymptotic
// O-constant is unspecified, this value was fixed against exact paths for
// primes in [1e3, 1e4] and Z in {p, 4p}.
inline constexpr double kPolyaEnvelopeConstant = 10.0;

struct PolyaApproximation {
  PrimeRecord prime;
  double truncation;    // Z >= 1
  double error_budget;  // c0 * (1/sqrt(p) + sqrt(p) log(p) / Z)
};

PolyaApproximation polya_budget(std::uint64_t p, double Z,
                                double c0 = kPolyaEnvelopeConstant);

// max_j |vertices[j]|; equals sup_t |f_p(t)| since a polygon attains its
// maximum at a vertex.
double sup_norm(const LegendrePath& path);

// max_j |vertices[p-1-j] - sigma*vertices[j]| with sigma = +1 for
// p = 3 mod 4 and -1 for p = 1 mod 4; zero in exact arithmetic.
double symmetry_defect(const LegendrePath& path);

// FT_p(h) = int_0^1 f_p(t) e(-h t) dt, exact closed form segment by
// segment; FT_p(0) = 0 by convention.
std::complex<double> fourier_coefficient(const LegendrePath& path,
                                         std::int64_t h);

// Predicted leading term eps_p * chi_p(-h) / (2 pi i h).
std::complex<double> fourier_leading_term(const PrimeRecord& prime,
                                          std::int64_t h);

inline constexpr std::int64_t kFourierFrequencyLimit = 1'000'000;

}  // namespace legendre

#endif  // LEGENDRE_LEGENDRE_PATH_HPP
