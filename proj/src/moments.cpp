#include "legendre/moments.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "legendre/legendre_path.hpp"

namespace legendre {

MomentRequest::MomentRequest(std::vector<double> t, std::vector<unsigned> n,
                             Variant v, std::uint32_t cap)
    : points(std::move(t)), exponents(std::move(n)), variant(v),
      factor_cap(cap) {
  if (points.empty() || points.size() != exponents.size())
    throw std::invalid_argument(
        "MomentRequest: points and exponents must be non-empty and aligned");
  for (double ti : points)
    if (!(ti >= 0.0 && ti <= 1.0))
      throw std::domain_error("MomentRequest: points must lie in [0, 1]");

  // Canonical form: pairs sorted by t.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return points[a] < points[b];
                   });
  std::vector<double> pt(points.size());
  std::vector<unsigned> ex(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    pt[i] = points[order[i]];
    ex[i] = exponents[order[i]];
  }
  points = std::move(pt);
  exponents = std::move(ex);

  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] == points[i - 1])
      throw std::invalid_argument("MomentRequest: points must be distinct");
  if (total_degree() == 0)
    throw std::invalid_argument("MomentRequest: total degree must be >= 1");
}

unsigned MomentRequest::total_degree() const {
  unsigned n = 0;
  for (unsigned e : exponents) n += e;
  return n;
}

// -----------------------------------------------------------------------
// Divisor-lattice recursion for B-coefficients.
//
// Divisors of m = prod p_i^{e_i} are indexed by their exponent tuple in
// mixed radix (stride_i = prod_{j<i} (e_j+1)).  Because exponents of a
// sub-divisor never exceed those of its parent, tuple subtraction is just
// rank subtraction, so ordered-factorization sums memoize cleanly on
// (level, rank).
// -----------------------------------------------------------------------

namespace {

struct Factorization {
  std::vector<std::uint64_t> primes;
  std::vector<std::uint32_t> exps;
};

Factorization factor_by_trial_division(std::uint64_t a) {
  Factorization f;
  for (std::uint64_t q = 2; q * q <= a; q += (q == 2) ? 1 : 2) {
    if (a % q) continue;
    std::uint32_t e = 0;
    while (a % q == 0) {
      a /= q;
      ++e;
    }
    f.primes.push_back(q);
    f.exps.push_back(e);
  }
  if (a > 1) {
    f.primes.push_back(a);
    f.exps.push_back(1);
  }
  return f;
}

Factorization factor_with_spf(std::uint64_t a, const SpfTable& spf) {
  Factorization f;
  while (a > 1) {
    std::uint64_t q = spf[a];
    std::uint32_t e = 0;
    while (a % q == 0) {
      a /= q;
      ++e;
    }
    f.primes.push_back(q);
    f.exps.push_back(e);
  }
  return f;
}

struct DivisorLattice {
  std::vector<std::uint64_t> value;   // divisor value by rank
  std::vector<std::uint32_t> radix;   // e_i + 1
  std::vector<std::uint32_t> stride;

  void build(const Factorization& f) {
    value.assign(1, 1);
    radix.clear();
    stride.clear();
    for (std::size_t i = 0; i < f.primes.size(); ++i) {
      const auto prev = static_cast<std::uint32_t>(value.size());
      stride.push_back(prev);
      radix.push_back(f.exps[i] + 1);
      value.resize(static_cast<std::size_t>(prev) * (f.exps[i] + 1));
      std::uint64_t pw = 1;
      for (std::uint32_t e = 1; e <= f.exps[i]; ++e) {
        pw *= f.primes[i];
        for (std::uint32_t r = 0; r < prev; ++r)
          value[static_cast<std::size_t>(e) * prev + r] = value[r] * pw;
      }
    }
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(value.size()); }

  // Applies fn(sub_rank) to every divisor of the divisor at g_rank.
  template <class Fn>
  void for_each_subrank(std::uint32_t g_rank, Fn&& fn) const {
    recurse(g_rank, static_cast<std::uint32_t>(radix.size()), 0, fn);
  }

 private:
  template <class Fn>
  void recurse(std::uint32_t g_rank, std::uint32_t dim, std::uint32_t acc,
               Fn&& fn) const {
    if (dim == 0) {
      fn(acc);
      return;
    }
    const std::uint32_t d = dim - 1;
    const std::uint32_t digit = (g_rank / stride[d]) % radix[d];
    for (std::uint32_t f = 0; f <= digit; ++f)
      recurse(g_rank, d, acc + f * stride[d], fn);
  }
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// Weighted ordered-factorization sums over one divisor lattice.
class BEvaluator {
 public:
  BEvaluator(const MomentRequest& req, bool minus_variant,
             const Factorization& f)
      : req_(req), minus_(minus_variant) {
    lat_.build(f);
    const std::size_t k = req.k();
    const std::uint32_t D = lat_.size();
    w1_.assign(k, std::vector<double>(D));
    for (std::size_t i = 0; i < k; ++i)
      for (std::uint32_t r = 0; r < D; ++r) w1_[i][r] = weight(i, lat_.value[r]);
    inner_memo_.assign(k, {});
    outer_memo_.assign(k, {});
    for (std::size_t i = 0; i < k; ++i) {
      inner_memo_[i].assign(req.exponents[i] + 1, {});
      for (auto& level : inner_memo_[i]) level.assign(D, kUnset);
      outer_memo_[i].assign(D, kUnset);
    }
  }

  double evaluate() { return outer(0, lat_.size() - 1); }

 private:
  double weight(std::size_t i, std::uint64_t b) const {
    if (req_.factor_cap && b > req_.factor_cap) return 0.0;
    const double t = req_.points[i];
    return minus_ ? one_minus_cos2pi_mult(b, t) : sin2pi_mult(b, t);
  }

  // Ordered r-factorizations of the divisor at g_rank, weighted by point i.
  double inner(std::size_t i, unsigned r, std::uint32_t g_rank) {
    if (r == 0) return g_rank == 0 ? 1.0 : 0.0;
    if (r == 1) return w1_[i][g_rank];
    double& slot = inner_memo_[i][r][g_rank];
    if (!std::isnan(slot)) return slot;
    double sum = 0.0;
    lat_.for_each_subrank(g_rank, [&](std::uint32_t f_rank) {
      const double w = w1_[i][f_rank];
      if (w != 0.0) sum += w * inner(i, r - 1, g_rank - f_rank);
    });
    slot = sum;
    return sum;
  }

  // Splits the divisor at g_rank across points i..k-1.
  double outer(std::size_t i, std::uint32_t g_rank) {
    if (i + 1 == req_.k()) return inner(i, req_.exponents[i], g_rank);
    double& slot = outer_memo_[i][g_rank];
    if (!std::isnan(slot)) return slot;
    double sum = 0.0;
    lat_.for_each_subrank(g_rank, [&](std::uint32_t f_rank) {
      const double v = inner(i, req_.exponents[i], f_rank);
      if (v != 0.0) sum += v * outer(i + 1, g_rank - f_rank);
    });
    slot = sum;
    return sum;
  }

  const MomentRequest& req_;
  bool minus_;
  DivisorLattice lat_;
  std::vector<std::vector<double>> w1_;
  std::vector<std::vector<std::vector<double>>> inner_memo_;  // [i][r][rank]
  std::vector<std::vector<double>> outer_memo_;               // [i][rank]
};

double b_of_factorization(const MomentRequest& req, bool minus_variant,
                          const Factorization& f) {
  BEvaluator eval(req, minus_variant, f);
  return eval.evaluate();
}

}  // namespace

double b_coefficient(Variant variant, const MomentRequest& request,
                     std::uint64_t a) {
  if (variant == Variant::combined)
    throw std::invalid_argument("b_coefficient: variant must be plus or minus");
  if (a == 0) throw std::invalid_argument("b_coefficient: a must be positive");
  if (a > kBCoefficientLimit)
    throw capacity_error("b_coefficient: a exceeds the 1e9 guard");
  return b_of_factorization(request, variant == Variant::minus,
                            factor_by_trial_division(a));
}

// -----------------------------------------------------------------------
// Certified tail majorant.
//
//   sum_{a>A} d_n(a^2)/a^2 <= A^(s-2) * D_n(s),   1 < s < 2,
//   D_n(s) = sum_a d_n(a^2) a^-s
//          = prod_p sum_e binom(2e+n-1, n-1) p^(-es),
//
// with the Euler product evaluated over p <= 1e4 and the remaining primes
// bounded through local(p)-1 <= c_n * p^-s and an integral estimate.  The
// exponent s is chosen from a short grid to minimize the bound.
// -----------------------------------------------------------------------

namespace {

double binomial(unsigned top, unsigned bottom) {
  double v = 1.0;
  for (unsigned j = 1; j <= bottom; ++j)
    v *= static_cast<double>(top - bottom + j) / static_cast<double>(j);
  return v;
}

// sum_{e>=1} binom(2e+n-1, n-1) x^e with a rigorous geometric closure;
// the term ratio decreases toward x, so once it is below 1 the remaining
// tail is dominated by a geometric series.
double local_factor_minus_one(unsigned n, double x) {
  double sum = 0.0;
  double term = binomial(n + 1, n - 1) * x;  // e = 1
  for (unsigned e = 1; e < 4000; ++e) {
    sum += term;
    double next = binomial(2 * (e + 1) + n - 1, n - 1) * std::pow(x, e + 1);
    double ratio = next / term;
    if (ratio < 0.9 && next < 1e-18 * (sum + 1.0)) {
      sum += next / (1.0 - ratio);
      return sum;
    }
    term = next;
  }
  throw std::runtime_error("local_factor_minus_one: no convergence");
}

double divisor_square_zeta_bound(unsigned n, double s) {
  constexpr std::uint64_t kPrimeCut = 10'000;
  static const std::vector<std::uint64_t> primes = sieve_primes(2, kPrimeCut);
  double log_product = 0.0;
  for (std::uint64_t p : primes) {
    double x = std::pow(static_cast<double>(p), -s);
    log_product += std::log1p(local_factor_minus_one(n, x));
  }
  // Primes above the cut: local(p)-1 <= c_n(x0) * p^-s with x0 at the cut,
  // and sum_{m>P} m^-s <= P^(1-s)/(s-1).
  double x0 = std::pow(static_cast<double>(kPrimeCut), -s);
  double c_n = local_factor_minus_one(n, x0) / x0;
  double remainder =
      c_n * std::pow(static_cast<double>(kPrimeCut), 1.0 - s) / (s - 1.0);
  return std::exp(log_product + remainder);
}

}  // namespace

double divisor_square_tail(unsigned n, std::uint64_t A) {
  if (n == 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double s = 1.10; s < 1.96; s += 0.05) {
    double bound = divisor_square_zeta_bound(n, s) *
                   std::pow(static_cast<double>(A), s - 2.0);
    best = std::min(best, bound);
  }
  return best;
}

// -----------------------------------------------------------------------
// Theoretical moments.
// -----------------------------------------------------------------------

namespace {

// sup_b |sin(2 pi b t)| resp. sup_b (1 - cos(2 pi b t)) over integers b.
// For rational t = u/v with small v the weights are periodic in b mod v
// and the sup is exact (in particular 0 at t = 0, 1/2, 1 for the sine
// branch); otherwise the trivial bound.
double weight_sup(bool minus_variant, double t) {
  for (std::uint64_t v = 1; v <= 64; ++v) {
    if (frac_mult(v, t) != 0.0) continue;
    double sup = 0.0;
    for (std::uint64_t b = 1; b <= v; ++b) {
      double w = minus_variant ? one_minus_cos2pi_mult(b, t)
                               : std::abs(sin2pi_mult(b, t));
      sup = std::max(sup, w);
    }
    return sup;
  }
  return minus_variant ? 2.0 : 1.0;
}

MomentValue theoretical_moment_single(const MomentRequest& req,
                                      std::uint64_t A, bool minus_variant) {
  const unsigned n = req.total_degree();

  // Terms vanish once a^2 > factor_cap^n.
  std::uint64_t limit = A;
  bool capped_exhausted = false;
  if (req.factor_cap) {
    double amax = std::pow(static_cast<double>(req.factor_cap), n / 2.0);
    capped_exhausted = static_cast<double>(A) >= amax;
    limit = std::min<std::uint64_t>(A, static_cast<std::uint64_t>(amax) + 1);
  }

  const SpfTable spf = smallest_prime_factor_table(std::max<std::uint64_t>(limit, 2));
  auto parts = map_chunks<double>(
      limit, 4096, [&](std::uint64_t lo, std::uint64_t hi) {
        KahanSum acc;
        for (std::uint64_t a = std::max<std::uint64_t>(lo, 1); a < hi; ++a) {
          Factorization f = factor_with_spf(a, spf);
          for (auto& e : f.exps) e *= 2;  // a^2
          double b = b_of_factorization(req, minus_variant, f);
          if (b != 0.0)
            acc.add(b / (static_cast<double>(a) * static_cast<double>(a)));
        }
        return acc.value();
      });

  const double pi_pow = std::pow(kPi, static_cast<double>(n));
  MomentValue out;
  out.value = reduce_ordered(parts) / pi_pow;
  out.truncation = A;

  double sup_scale = 1.0;
  for (std::size_t i = 0; i < req.k(); ++i)
    sup_scale *= std::pow(weight_sup(minus_variant, req.points[i]),
                          static_cast<double>(req.exponents[i]));
  out.tail_bound =
      capped_exhausted ? 0.0
                       : sup_scale * divisor_square_tail(n, A) / pi_pow;
  return out;
}

}  // namespace

MomentValue theoretical_moment(const MomentRequest& request, std::uint64_t A) {
  if (A < 1) throw std::invalid_argument("theoretical_moment: A must be >= 1");
  if (request.variant == Variant::combined) {
    MomentValue plus = theoretical_moment_single(request, A, false);
    MomentValue minus = theoretical_moment_single(request, A, true);
    MomentValue out;
    out.value = 0.5 * (plus.value + minus.value);
    out.truncation = A;
    out.tail_bound = 0.5 * (plus.tail_bound + minus.tail_bound);
    return out;
  }
  return theoretical_moment_single(request, A,
                                   request.variant == Variant::minus);
}

// -----------------------------------------------------------------------
// Exact fourth increment moment.
//
// With a_n = (e(-ns) - e(-nt))/n and S = sum_{0<|n|<=N} X_n a_n
// (a_{-n} = conj(a_n)), the square S^2 = sum_m X_m h(m) has support on
// 0 < |m| <= N^2, and under E(X_m) = [m is a positive perfect square]
//
//   E|S|^4 = sum_{kernel kappa} (T+_kappa)^2 + (T-_kappa)^2,
//   T±_kappa = sum_{u : kappa u^2 <= N^2} h(±kappa u^2),
//
// grouping indices by squarefree kernel.  Collapsing the (±n_1, ±n_2)
// sign choices leaves real accumulators:
//   h(+m) += 2 Re(a_{n_1} a_{n_2}),  h(-m) += 2 Re(a_{n_1} conj(a_{n_2})).
// Normalization: E|F_N(t)-F_N(s)|^4 = E|S|^4 / (2 pi)^4.
// -----------------------------------------------------------------------

double increment_fourth_moment_exact(std::uint32_t N, double s, double t) {
  if (!(s >= 0.0 && t <= 1.0))
    throw std::domain_error("increment_fourth_moment_exact: need 0 <= s, t <= 1");
  if (s > t)
    throw std::domain_error("increment_fourth_moment_exact: requires s <= t");
  if (N < 1 || N > kExactFourthMomentLimit)
    throw capacity_error("increment_fourth_moment_exact: N exceeds 512");
  if (s == t) return 0.0;

  const std::uint64_t M = static_cast<std::uint64_t>(N) * N;
  std::vector<std::complex<double>> a(N + 1);
  for (std::uint32_t n = 1; n <= N; ++n) {
    const double fs = frac_mult(n, s);
    const double ft = frac_mult(n, t);
    const std::complex<double> es(cos2pi_frac(fs), -sin2pi_frac(fs));
    const std::complex<double> et(cos2pi_frac(ft), -sin2pi_frac(ft));
    a[n] = (es - et) / static_cast<double>(n);
  }

  std::vector<double> h_pos(M + 1, 0.0), h_neg(M + 1, 0.0);
  for (std::uint32_t n1 = 1; n1 <= N; ++n1) {
    for (std::uint32_t n2 = 1; n2 <= N; ++n2) {
      const std::uint64_t m = static_cast<std::uint64_t>(n1) * n2;
      const std::complex<double> same = a[n1] * a[n2];
      const std::complex<double> cross = a[n1] * std::conj(a[n2]);
      h_pos[m] += 2.0 * same.real();
      h_neg[m] += 2.0 * cross.real();
    }
  }

  const SpfTable spf = smallest_prime_factor_table(std::max<std::uint64_t>(M, 2));
  std::vector<double> t_pos(M + 1, 0.0), t_neg(M + 1, 0.0);
  for (std::uint64_t m = 1; m <= M; ++m) {
    std::uint64_t rest = m, kernel = 1;
    while (rest > 1) {
      std::uint64_t q = spf[rest];
      std::uint32_t e = 0;
      while (rest % q == 0) {
        rest /= q;
        ++e;
      }
      if (e & 1) kernel *= q;
    }
    t_pos[kernel] += h_pos[m];
    t_neg[kernel] += h_neg[m];
  }

  KahanSum total;
  for (std::uint64_t kappa = 1; kappa <= M; ++kappa) {
    if (t_pos[kappa] != 0.0) total.add(t_pos[kappa] * t_pos[kappa]);
    if (t_neg[kappa] != 0.0) total.add(t_neg[kappa] * t_neg[kappa]);
  }
  const double two_pi_4 = kTwoPi * kTwoPi * kTwoPi * kTwoPi;
  return total.value() / two_pi_4;
}

// -----------------------------------------------------------------------
// Empirical moments over the prime family.
// -----------------------------------------------------------------------

namespace {

double pow_unsigned(double x, unsigned e) {
  double v = 1.0;
  while (e) {
    if (e & 1) v *= x;
    x *= x;
    e >>= 1;
  }
  return v;
}

PrimeClass variant_class(Variant v) {
  switch (v) {
    case Variant::plus: return PrimeClass::one_mod_four;
    case Variant::minus: return PrimeClass::three_mod_four;
    case Variant::combined: return PrimeClass::all;
  }
  return PrimeClass::all;
}

}  // namespace

double empirical_moment(const MomentRequest& request, std::uint64_t Q,
                        PathMode mode, double polya_z) {
  if (Q < 100) throw std::invalid_argument("empirical_moment: Q must be >= 100");
  if (2 * Q > kSymbolTableLimit)
    throw capacity_error("empirical_moment: 2Q exceeds the symbol-table guard");
  if (mode == PathMode::polya && polya_z < 1.0)
    throw std::invalid_argument("empirical_moment: polya mode needs Z >= 1");

  std::vector<std::uint64_t> primes;
  const PrimeClass cls = variant_class(request.variant);
  for (std::uint64_t p : sieve_primes(Q, 2 * Q))
    if (matches_class(p, cls)) primes.push_back(p);
  if (primes.empty())
    throw std::invalid_argument("empirical_moment: empty prime range");

  const SpfTable spf = smallest_prime_factor_table(2 * Q);
  auto parts = map_chunks<double>(
      primes.size(), 16, [&](std::uint64_t lo, std::uint64_t hi) {
        KahanSum acc;
        for (std::uint64_t i = lo; i < hi; ++i) {
          const SymbolTable table = symbol_table(primes[i], spf);
          double prod = 1.0;
          if (mode == PathMode::exact_path) {
            const LegendrePath path = build_path(table);
            for (std::size_t j = 0; j < request.k(); ++j)
              prod *= pow_unsigned(eval_path(path, request.points[j]),
                                   request.exponents[j]);
          } else {
            for (std::size_t j = 0; j < request.k(); ++j)
              prod *= pow_unsigned(
                  polya_approx(table, request.points[j], polya_z),
                  request.exponents[j]);
          }
          acc.add(prod);
        }
        return acc.value();
      });
  return reduce_ordered(parts) / static_cast<double>(primes.size());
}

MomentGap moment_gap(const MomentRequest& request, std::uint64_t Q,
                     std::uint64_t A, PathMode mode, double polya_z) {
  MomentGap out;
  out.empirical = empirical_moment(request, Q, mode, polya_z);
  out.theoretical = theoretical_moment(request, A);
  out.gap = std::abs(out.empirical - out.theoretical.value);
  return out;
}

}  // namespace legendre
