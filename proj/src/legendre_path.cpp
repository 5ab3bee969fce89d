#include "legendre/legendre_path.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace legendre {

LegendrePath build_path(const SymbolTable& table) {
  const std::uint64_t p = table.p;
  LegendrePath path;
  path.prime = prime_record(p);
  path.vertices.resize(p + 1);

  // Integer cumulative sums first; normalization cannot disturb the
  // vertex identities (S_0 = S_{p-1} = S_p = 0 map to exact 0.0, and the
  // mod-4 symmetry S_{p-1-j} = +-S_j survives the common scaling).
  const double inv_root = 1.0 / std::sqrt(static_cast<double>(p));
  std::int64_t sum = 0;
  path.vertices[0] = 0.0;
  for (std::uint64_t j = 1; j < p; ++j) {
    sum += table.values[j];
    path.vertices[j] = static_cast<double>(sum) * inv_root;
  }
  assert(sum == 0 && "full nontrivial character sum must vanish");
  path.vertices[p] = path.vertices[p - 1];
  return path;
}

LegendrePath build_path(std::uint64_t p) { return build_path(symbol_table(p)); }

double eval_path(const LegendrePath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("eval_path: t must lie in [0, 1]");
  const auto p = static_cast<double>(path.prime.p);
  double x = p * t;
  // Snap to a vertex when p*t is an integer up to the rounding slop of the
  // product, so eval at t = j/p reproduces vertices[j] exactly.
  double r = std::nearbyint(x);
  if (std::abs(x - r) <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
    auto j = static_cast<std::uint64_t>(r);
    if (j <= path.prime.p) return path.vertices[j];
  }
  auto j = static_cast<std::uint64_t>(x);
  if (j >= path.prime.p) return path.vertices[path.prime.p];
  double frac = x - static_cast<double>(j);
  return path.vertices[j] + frac * (path.vertices[j + 1] - path.vertices[j]);
}

double polya_approx(const SymbolTable& table, double t, double Z) {
  if (Z < 1.0) throw std::invalid_argument("polya_approx: Z must be >= 1");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("polya_approx: t must lie in [0, 1]");
  const auto limit = static_cast<std::uint64_t>(Z);
  const bool sine_branch = (table.p % 4 == 1);
  KahanSum acc;
  for (std::uint64_t a = 1; a <= limit; ++a) {
    int chi = table.chi(static_cast<std::int64_t>(a));
    if (chi == 0) continue;
    double w = sine_branch ? sin2pi_mult(a, t) : one_minus_cos2pi_mult(a, t);
    acc.add(chi * w / static_cast<double>(a));
  }
  return acc.value() / kPi;
}

double polya_approx(std::uint64_t p, double t, double Z) {
  return polya_approx(symbol_table(p), t, Z);
}

PolyaApproximation polya_budget(std::uint64_t p, double Z, double c0) {
  if (Z < 1.0) throw std::invalid_argument("polya_budget: Z must be >= 1");
  PolyaApproximation out;
  out.prime = prime_record(p);
  out.truncation = Z;
  const double root = std::sqrt(static_cast<double>(p));
  out.error_budget = c0 * (1.0 / root + root * std::log(static_cast<double>(p)) / Z);
  return out;
}

double sup_norm(const LegendrePath& path) {
  double best = 0.0;
  for (double v : path.vertices) best = std::max(best, std::abs(v));
  return best;
}

double symmetry_defect(const LegendrePath& path) {
  const std::uint64_t p = path.prime.p;
  const double sigma = (path.prime.residue_class == 3) ? 1.0 : -1.0;
  double worst = 0.0;
  for (std::uint64_t j = 0; j < p; ++j) {
    double d = std::abs(path.vertices[p - 1 - j] - sigma * path.vertices[j]);
    worst = std::max(worst, d);
  }
  return worst;
}

// -----------------------------------------------------------------------
// Exact Fourier coefficient of the polygon.
//
// On segment j the path is v_j + (p t - j) * (v_{j+1} - v_j); with
// w = 2 pi h and L = 1/p,
//
//   int_0^L e^(-i w u) du       = (1 - E) / (i w)                =: I0
//   int_0^L u e^(-i w u) du     = -(1 - E)/w^2 - L E / (i w)     =: I1
//
// where E = e^(-i w L).  Both are segment-independent; the segment phase
// e^(-i w j/p) is computed from the exact residue (h j) mod p.
// -----------------------------------------------------------------------

std::complex<double> fourier_coefficient(const LegendrePath& path,
                                         std::int64_t h) {
  if (h == 0) return {0.0, 0.0};
  if (h > kFourierFrequencyLimit || h < -kFourierFrequencyLimit)
    throw capacity_error("fourier_coefficient: |h| exceeds the 1e6 guard");

  const std::uint64_t p = path.prime.p;
  const double w = kTwoPi * static_cast<double>(h);
  const double inv_p = 1.0 / static_cast<double>(p);

  // E = e^(-i w / p) = e(-h/p), from the exact residue h mod p.
  std::int64_t hm = h % static_cast<std::int64_t>(p);
  if (hm < 0) hm += static_cast<std::int64_t>(p);
  const auto h_mod_p = static_cast<std::uint64_t>(hm);
  const double hfrac = static_cast<double>(h_mod_p) * inv_p;
  const std::complex<double> one_minus_E(one_minus_cos2pi_frac(hfrac),
                                         sin2pi_frac(hfrac));
  const std::complex<double> E = 1.0 - one_minus_E;
  const std::complex<double> iw(0.0, w);
  const std::complex<double> I0 = one_minus_E / iw;
  const std::complex<double> I1 = -one_minus_E / (w * w) - inv_p * E / iw;

  KahanSum re, im;
  std::uint64_t phase = 0;  // (h j) mod p for the current segment
  for (std::uint64_t j = 0; j < p; ++j) {
    const double v = path.vertices[j];
    const double slope = path.vertices[j + 1] - v;  // times p below
    if (v != 0.0 || slope != 0.0) {
      const double x = static_cast<double>(phase) * inv_p;
      const std::complex<double> rot(cos2pi_frac(x), -sin2pi_frac(x));
      const std::complex<double> seg =
          rot * (v * I0 + (static_cast<double>(p) * slope) * I1);
      re.add(seg.real());
      im.add(seg.imag());
    }
    phase += h_mod_p;
    if (phase >= p) phase -= p;
  }
  return {re.value(), im.value()};
}

std::complex<double> fourier_leading_term(const PrimeRecord& prime,
                                          std::int64_t h) {
  if (h == 0) return {0.0, 0.0};
  const int chi = legendre_symbol(-h, prime.p);
  // eps_p * chi_p(-h) / (2 pi i h)
  const std::complex<double> denom(0.0, kTwoPi * static_cast<double>(h));
  return prime.epsilon * static_cast<double>(chi) / denom;
}

}  // namespace legendre
