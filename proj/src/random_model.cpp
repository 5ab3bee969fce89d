#include "legendre/random_model.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "legendre/trig_series.hpp"

namespace legendre {

RademacherSample sample_signs(std::uint64_t seed, std::uint64_t P) {
  if (P > kPrimeCutoffLimit)
    throw capacity_error("sample_signs: P exceeds the 1e8 guard");
  RademacherSample sample;
  sample.seed = seed;
  sample.prime_cutoff = P;
  sample.sign_minus_one = keyed_sign(seed, kMinusOneKey);
  if (P >= 2) {
    for (std::uint64_t q : sieve_primes(2, P)) {
      sample.primes.push_back(static_cast<std::uint32_t>(q));
      sample.signs.push_back(static_cast<std::int8_t>(keyed_sign(seed, q)));
    }
  }
  return sample;
}

int eval_multiplicative(const RademacherSample& sample, std::int64_t n) {
  if (n == 0)
    throw std::invalid_argument("eval_multiplicative: n must be nonzero");
  auto m = static_cast<std::uint64_t>(n < 0 ? -n : n);
  if (m > kFactorizationLimit)
    throw capacity_error("eval_multiplicative: |n| exceeds the 1e12 guard");

  int x = (n < 0) ? sample.sign_minus_one : +1;
  for (std::uint64_t q = 2; q * q <= m; q += (q == 2) ? 1 : 2) {
    if (m % q) continue;
    unsigned e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e & 1) x *= sample.sign_at_prime(q);  // X_q^2 = 1
  }
  if (m > 1) x *= sample.sign_at_prime(m);
  return x;
}

std::vector<std::int8_t> multiplicative_values(std::uint64_t seed,
                                               std::uint32_t N,
                                               const SpfTable& spf) {
  if (spf.limit() < N)
    throw std::invalid_argument("multiplicative_values: spf table too small");
  std::vector<std::int8_t> values(static_cast<std::size_t>(N) + 1, 0);
  if (N >= 1) values[1] = 1;
  for (std::uint32_t n = 2; n <= N; ++n) {
    std::uint32_t q = spf[n];
    values[n] = (q == n)
                    ? static_cast<std::int8_t>(keyed_sign(seed, n))
                    : static_cast<std::int8_t>(values[q] * values[n / q]);
  }
  return values;
}

namespace {

void check_unit_interval(double t, const char* who) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error(std::string(who) + ": t must lie in [0, 1]");
}

double series_value(const std::vector<std::int8_t>& x, std::uint32_t N,
                    double t, int sign_minus_one) {
  KahanSum acc;
  if (sign_minus_one == +1) {
    for (std::uint32_t n = 1; n <= N; ++n)
      acc.add(x[n] * sin2pi_mult(n, t) / static_cast<double>(n));
  } else {
    for (std::uint32_t n = 1; n <= N; ++n)
      acc.add(x[n] * one_minus_cos2pi_mult(n, t) / static_cast<double>(n));
  }
  return acc.value() / kPi;
}

}  // namespace

double eval_partial_series(const RademacherSample& sample, std::uint32_t N,
                           double t) {
  check_unit_interval(t, "eval_partial_series");
  if (N < 1) throw std::invalid_argument("eval_partial_series: N must be >= 1");
  if (N > kPrimeCutoffLimit)
    throw capacity_error("eval_partial_series: N exceeds the 1e8 guard");
  SpfTable spf = smallest_prime_factor_table(std::max<std::uint32_t>(N, 2));
  std::vector<std::int8_t> x = multiplicative_values(sample.seed, N, spf);
  return series_value(x, N, t, sample.sign_minus_one);
}

ModelPath sample_model_path(const RademacherSample& sample, std::uint32_t N,
                            std::size_t grid_size) {
  if (grid_size < 2)
    throw std::invalid_argument("sample_model_path: grid_size must be >= 2");
  if (N < 1) throw std::invalid_argument("sample_model_path: N must be >= 1");
  if (N > kPrimeCutoffLimit)
    throw capacity_error("sample_model_path: N exceeds the 1e8 guard");

  ModelPath path;
  path.n_terms = N;
  path.sign_minus_one = sample.sign_minus_one;
  path.seed = sample.seed;
  path.grid.resize(grid_size);
  path.values.assign(grid_size, 0.0);
  const std::size_t G = grid_size - 1;
  for (std::size_t j = 0; j < grid_size; ++j)
    path.grid[j] = static_cast<double>(j) / static_cast<double>(G);

  SpfTable spf = smallest_prime_factor_table(std::max<std::uint32_t>(N, 2));
  std::vector<std::int8_t> x = multiplicative_values(sample.seed, N, spf);

  if (grid_size >= 2 * static_cast<std::size_t>(N) + 2) {
    // Pure trigonometric polynomial on the grid j/G: one transform gives
    // every value.  Endpoints are identically zero for both branches
    // (every summand vanishes at integer t) and are pinned exactly.
    std::vector<double> coeff(N);
    KahanSum total;
    for (std::uint32_t n = 1; n <= N; ++n) {
      coeff[n - 1] = x[n] / static_cast<double>(n);
      total.add(coeff[n - 1]);
    }
    TrigGridValues s = trig_series_on_grid(coeff, G);
    if (sample.sign_minus_one == +1) {
      for (std::size_t j = 1; j < G; ++j) path.values[j] = s.im[j] / kPi;
    } else {
      const double c = total.value();
      for (std::size_t j = 1; j < G; ++j)
        path.values[j] = (c - s.re[j]) / kPi;
    }
    path.values[0] = 0.0;
    path.values[G] = 0.0;
  } else {
    const int smo = sample.sign_minus_one;
    auto parts = map_chunks<int>(
        grid_size, 4096, [&](std::uint64_t lo, std::uint64_t hi) {
          for (std::uint64_t j = lo; j < hi; ++j)
            path.values[j] = series_value(x, N, path.grid[j], smo);
          return 0;
        });
    (void)parts;
  }
  return path;
}

// -----------------------------------------------------------------------
// Monte Carlo increment moments.
// -----------------------------------------------------------------------

ModelContext::ModelContext(std::uint32_t N)
    : n_terms(N), spf(smallest_prime_factor_table(std::max<std::uint32_t>(N, 2))) {}

int ModelContext::fill_trial_values(std::uint64_t seed, std::uint64_t trial,
                                    std::vector<std::int8_t>& values) const {
  const std::uint64_t trial_seed = derive_seed(seed, trial);
  values.assign(static_cast<std::size_t>(n_terms) + 1, 0);
  if (n_terms >= 1) values[1] = 1;
  for (std::uint32_t n = 2; n <= n_terms; ++n) {
    std::uint32_t q = spf[n];
    values[n] = (q == n)
                    ? static_cast<std::int8_t>(keyed_sign(trial_seed, n))
                    : static_cast<std::int8_t>(values[q] * values[n / q]);
  }
  return keyed_sign(trial_seed, kMinusOneKey);
}

McMoment increment_fourth_moment_mc(std::uint32_t N, double s, double t,
                                    std::uint64_t trials, std::uint64_t seed) {
  check_unit_interval(s, "increment_fourth_moment_mc");
  check_unit_interval(t, "increment_fourth_moment_mc");
  if (s > t)
    throw std::domain_error("increment_fourth_moment_mc: requires s <= t");
  if (trials < 100)
    throw std::invalid_argument(
        "increment_fourth_moment_mc: trials must be >= 100");
  if (N < 1 || N > kPrimeCutoffLimit)
    throw capacity_error("increment_fourth_moment_mc: N out of range");
  if (s == t) return {0.0, 0.0, trials};

  ModelContext ctx(N);
  // The trig factors are trial-independent.
  std::vector<double> w_plus(static_cast<std::size_t>(N) + 1);
  std::vector<double> w_minus(static_cast<std::size_t>(N) + 1);
  for (std::uint32_t n = 1; n <= N; ++n) {
    w_plus[n] = (sin2pi_mult(n, t) - sin2pi_mult(n, s)) / n;
    w_minus[n] =
        (one_minus_cos2pi_mult(n, t) - one_minus_cos2pi_mult(n, s)) / n;
  }

  struct Partial {
    KahanSum sum;
    KahanSum sum_sq;
  };
  auto parts = map_chunks<Partial>(
      trials, 64, [&](std::uint64_t lo, std::uint64_t hi) {
        Partial part;
        std::vector<std::int8_t> x;
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
          int smo = ctx.fill_trial_values(seed, trial, x);
          const std::vector<double>& w = (smo == +1) ? w_plus : w_minus;
          double d = 0.0;
          for (std::uint32_t n = 1; n <= N; ++n) d += x[n] * w[n];
          d /= kPi;
          double d4 = d * d * d * d;
          part.sum.add(d4);
          part.sum_sq.add(d4 * d4);
        }
        return part;
      });

  KahanSum sum, sum_sq;
  for (const Partial& part : parts) {
    sum.add(part.sum.value());
    sum_sq.add(part.sum_sq.value());
  }
  const auto n = static_cast<double>(trials);
  const double mean = sum.value() / n;
  double var = (sum_sq.value() - n * mean * mean) / (n - 1.0);
  if (var < 0.0) var = 0.0;  // roundoff near-constant samples
  return {mean, std::sqrt(var / n), trials};
}

}  // namespace legendre
