#include "legendre/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "legendre/legendre_path.hpp"
#include "legendre/random_model.hpp"
#include "legendre/trig_series.hpp"

namespace legendre {

namespace {

const char* sign_class_name(SignClass s) {
  switch (s) {
    case SignClass::random_sign: return "random";
    case SignClass::plus_one: return "plus";
    case SignClass::minus_one: return "minus";
  }
  return "random";
}

const char* prime_class_name(PrimeClass c) {
  switch (c) {
    case PrimeClass::all: return "all";
    case PrimeClass::one_mod_four: return "1mod4";
    case PrimeClass::three_mod_four: return "3mod4";
  }
  return "all";
}

std::vector<std::uint64_t> prime_family(std::uint64_t Q, PrimeClass cls) {
  if (2 * Q > kSymbolTableLimit)
    throw capacity_error("prime sampler: 2Q exceeds the symbol-table guard");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : sieve_primes(Q, 2 * Q))
    if (matches_class(p, cls)) primes.push_back(p);
  if (primes.empty())
    throw std::invalid_argument("prime sampler: empty prime range");
  return primes;
}

// One model draw: fills `coeff` with X_n/n for the trial stream and
// returns the trial's X_{-1} (overridden by the sign class).
int draw_coefficients(const ModelContext& ctx, std::uint64_t seed,
                      std::uint64_t trial, SignClass sign,
                      std::vector<std::int8_t>& x,
                      std::vector<double>& coeff) {
  int smo = ctx.fill_trial_values(seed, trial, x);
  if (sign == SignClass::plus_one) smo = +1;
  if (sign == SignClass::minus_one) smo = -1;
  for (std::uint32_t n = 1; n <= ctx.n_terms; ++n)
    coeff[n - 1] = x[n] / static_cast<double>(n);
  return smo;
}

// Grid maximum of |f| sharpened by the parabola through the argmax and its
// neighbors; for an oversampled trigonometric polynomial this removes the
// O(h^2) bias of the raw grid max.
double refined_abs_max(const std::vector<double>& f) {
  std::size_t jm = 0;
  double best = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (std::abs(f[j]) > best) {
      best = std::abs(f[j]);
      jm = j;
    }
  }
  if (jm == 0 || jm + 1 >= f.size()) return best;
  const double ym = f[jm - 1], y0 = f[jm], yp = f[jm + 1];
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return best;
  const double delta = 0.5 * (ym - yp) / denom;
  if (std::abs(delta) > 1.0) return best;
  const double vertex = y0 - 0.25 * (ym - yp) * delta;
  return std::max(best, std::abs(vertex));
}

}  // namespace

EmpiricalSample supnorm_samples_primes(std::uint64_t Q, PrimeClass cls) {
  const std::vector<std::uint64_t> primes = prime_family(Q, cls);
  const SpfTable spf = smallest_prime_factor_table(2 * Q);

  EmpiricalSample sample;
  sample.values.resize(primes.size());
  auto parts = map_chunks<int>(
      primes.size(), 16, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i)
          sample.values[i] = sup_norm(build_path(symbol_table(primes[i], spf)));
        return 0;
      });
  (void)parts;
  sample.metadata = {{"source", "primes"},
                     {"q", Q},
                     {"class", prime_class_name(cls)},
                     {"count", primes.size()}};
  return sample;
}

EmpiricalSample supnorm_samples_model(std::uint32_t N, std::size_t grid_size,
                                      std::size_t count, std::uint64_t seed,
                                      SignClass sign) {
  if (count < 100)
    throw std::invalid_argument("supnorm_samples_model: count must be >= 100");
  if (grid_size < 2 * static_cast<std::size_t>(N) + 2)
    throw std::invalid_argument(
        "supnorm_samples_model: grid_size must be >= 2N+2");

  const ModelContext ctx(N);
  const std::size_t G = grid_size - 1;

  EmpiricalSample sample;
  sample.values.resize(count);
  auto parts = map_chunks<int>(
      count, 8, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::int8_t> x;
        std::vector<double> coeff(N);
        std::vector<double> f(G);
        for (std::uint64_t i = lo; i < hi; ++i) {
          int smo = draw_coefficients(ctx, seed, i, sign, x, coeff);
          TrigGridValues s = trig_series_on_grid(coeff, G);
          if (smo == +1) {
            for (std::size_t j = 0; j < G; ++j) f[j] = s.im[j];
          } else {
            KahanSum total;
            for (double c : coeff) total.add(c);
            const double c0 = total.value();
            for (std::size_t j = 0; j < G; ++j) f[j] = c0 - s.re[j];
          }
          sample.values[i] = refined_abs_max(f) / kPi;
        }
        return 0;
      });
  (void)parts;
  sample.metadata = {{"source", "model"},  {"n_terms", N},
                     {"grid", grid_size},  {"count", count},
                     {"seed", seed},       {"sign", sign_class_name(sign)}};
  return sample;
}

double ks_distance(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.values.empty() || b.values.empty())
    throw std::invalid_argument("ks_distance: samples must be non-empty");
  std::vector<double> xs(a.values), ys(b.values);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  // Once one sample is exhausted the gap only shrinks toward |1 - F|.
  return d;
}

SampleMatrix finite_dim_samples_primes(std::uint64_t Q,
                                       std::span<const double> points,
                                       PrimeClass cls) {
  if (points.empty())
    throw std::invalid_argument("finite_dim_samples: points must be non-empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0 && points[i] <= 1.0))
      throw std::domain_error("finite_dim_samples: points must lie in [0,1]");
    if (i && !(points[i] > points[i - 1]))
      throw std::invalid_argument(
          "finite_dim_samples: points must be strictly increasing");
  }
  const std::vector<std::uint64_t> primes = prime_family(Q, cls);
  const SpfTable spf = smallest_prime_factor_table(2 * Q);

  SampleMatrix m;
  m.points.assign(points.begin(), points.end());
  m.rows = primes.size();
  m.data.resize(m.rows * points.size());
  auto parts = map_chunks<int>(
      primes.size(), 16, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
          const LegendrePath path = build_path(symbol_table(primes[i], spf));
          for (std::size_t c = 0; c < points.size(); ++c)
            m.data[i * points.size() + c] = eval_path(path, points[c]);
        }
        return 0;
      });
  (void)parts;
  m.metadata = {{"source", "primes"},
                {"q", Q},
                {"class", prime_class_name(cls)},
                {"points", m.points}};
  return m;
}

SampleMatrix finite_dim_samples_model(std::uint32_t N, std::size_t count,
                                      std::uint64_t seed,
                                      std::span<const double> points,
                                      SignClass sign) {
  if (points.empty())
    throw std::invalid_argument("finite_dim_samples: points must be non-empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0 && points[i] <= 1.0))
      throw std::domain_error("finite_dim_samples: points must lie in [0,1]");
    if (i && !(points[i] > points[i - 1]))
      throw std::invalid_argument(
          "finite_dim_samples: points must be strictly increasing");
  }
  const ModelContext ctx(N);

  SampleMatrix m;
  m.points.assign(points.begin(), points.end());
  m.rows = count;
  m.data.resize(m.rows * points.size());
  auto parts = map_chunks<int>(
      count, 32, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::int8_t> x;
        for (std::uint64_t i = lo; i < hi; ++i) {
          int smo = ctx.fill_trial_values(seed, i, x);
          if (sign == SignClass::plus_one) smo = +1;
          if (sign == SignClass::minus_one) smo = -1;
          for (std::size_t c = 0; c < points.size(); ++c) {
            const double t = points[c];
            KahanSum acc;
            if (smo == +1) {
              for (std::uint32_t n = 1; n <= N; ++n)
                acc.add(x[n] * sin2pi_mult(n, t) / static_cast<double>(n));
            } else {
              for (std::uint32_t n = 1; n <= N; ++n)
                acc.add(x[n] * one_minus_cos2pi_mult(n, t) /
                        static_cast<double>(n));
            }
            m.data[i * points.size() + c] = acc.value() / kPi;
          }
        }
        return 0;
      });
  (void)parts;
  m.metadata = {{"source", "model"},
                {"n_terms", N},
                {"count", count},
                {"seed", seed},
                {"sign", sign_class_name(sign)},
                {"points", m.points}};
  return m;
}

double prime_increment_moment(std::uint64_t Q, double s, double t,
                              unsigned power, PrimeClass cls, bool reflected) {
  if (!(s >= 0.0 && t <= 1.0))
    throw std::domain_error("prime_increment_moment: need 0 <= s, t <= 1");
  if (s > t)
    throw std::domain_error("prime_increment_moment: requires s <= t");
  if (power == 0 || power % 2 != 0)
    throw std::invalid_argument(
        "prime_increment_moment: power must be positive and even");
  if (s == t) return 0.0;

  const std::vector<std::uint64_t> primes = prime_family(Q, cls);
  const SpfTable spf = smallest_prime_factor_table(2 * Q);

  auto parts = map_chunks<double>(
      primes.size(), 16, [&](std::uint64_t lo, std::uint64_t hi) {
        KahanSum acc;
        for (std::uint64_t i = lo; i < hi; ++i) {
          const std::uint64_t p = primes[i];
          const LegendrePath path = build_path(symbol_table(p, spf));
          double ss = s, tt = t;
          if (reflected) {
            // Mirror about the symmetry center (p-1)/(2p).
            const double edge =
                static_cast<double>(p - 1) / static_cast<double>(p);
            if (t > edge)
              throw std::domain_error(
                  "prime_increment_moment: reflected times out of range");
            ss = edge - t;
            tt = edge - s;
          }
          const double d = std::abs(eval_path(path, tt) - eval_path(path, ss));
          double v = 1.0;
          for (unsigned e = 0; e < power; ++e) v *= d;
          acc.add(v);
        }
        return acc.value();
      });
  return reduce_ordered(parts) / static_cast<double>(primes.size());
}

}  // namespace legendre
