#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "legendre/moments.hpp"
#include "legendre/random_model.hpp"
#include "oracles.hpp"

using namespace legendre;

namespace {

// d_n(a): ordered n-factorizations, by brute recursion.
std::uint64_t divisor_count_n(unsigned n, std::uint64_t a) {
  if (n == 0) return a == 1 ? 1 : 0;
  if (n == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d <= a; ++d)
    if (a % d == 0) total += divisor_count_n(n - 1, a / d);
  return total;
}

}  // namespace

TEST_CASE("MomentRequest validation and canonical ordering") {
  CHECK_THROWS_AS(MomentRequest({}, {}, Variant::plus), std::invalid_argument);
  CHECK_THROWS_AS(MomentRequest({0.1}, {0}, Variant::plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(MomentRequest({0.1, 0.1}, {1, 1}, Variant::plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(MomentRequest({1.5}, {1}, Variant::plus), std::domain_error);

  MomentRequest req({0.7, 0.2}, {1, 3}, Variant::plus);
  CHECK(req.points == std::vector<double>{0.2, 0.7});
  CHECK(req.exponents == std::vector<unsigned>{3, 1});
  CHECK(req.total_degree() == 4);
}

TEST_CASE("b_coefficient worked examples") {
  // (plus, n=(2), t=(1/4), a=9): pairs (1,9),(3,3),(9,1), each product 1.
  MomentRequest quarter({0.25}, {2}, Variant::plus);
  CHECK(b_coefficient(Variant::plus, quarter, 9) == doctest::Approx(3.0));

  // Sine factors vanish identically at t = 1/2.
  MomentRequest half({0.5}, {1}, Variant::plus);
  for (std::uint64_t a : {1ULL, 2ULL, 7ULL, 12ULL, 360ULL})
    CHECK(b_coefficient(Variant::plus, half, a) == 0.0);

  // (minus, n=(1), t=(1/2), a=3): 1 - cos(3 pi) = 2.
  MomentRequest half_minus({0.5}, {1}, Variant::minus);
  CHECK(b_coefficient(Variant::minus, half_minus, 3) == doctest::Approx(2.0));

  CHECK_THROWS_AS(b_coefficient(Variant::combined, quarter, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(b_coefficient(Variant::plus, quarter, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(b_coefficient(Variant::plus, quarter, 2'000'000'000),
                  capacity_error);
}

TEST_CASE("b_coefficient against direct ordered-factorization enumeration") {
  // Independent oracle: enumerate ordered triples (k=2 with n=(2,1)).
  MomentRequest req({0.15, 0.6}, {2, 1}, Variant::plus);
  auto w1 = [&](std::uint64_t b) { return std::sin(kTwoPi * b * 0.15); };
  auto w2 = [&](std::uint64_t b) { return std::sin(kTwoPi * b * 0.6); };
  for (std::uint64_t a : {1ULL, 6ULL, 12ULL, 36ULL, 100ULL}) {
    double expected = 0.0;
    for (std::uint64_t b1 = 1; b1 <= a; ++b1) {
      if (a % b1) continue;
      for (std::uint64_t b2 = 1; b2 <= a / b1; ++b2) {
        if ((a / b1) % b2) continue;
        expected += w1(b1) * w1(b2) * w2(a / (b1 * b2));
      }
    }
    CHECK(b_coefficient(Variant::plus, req, a) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("b_coefficient envelopes |B| <= d_n(a) and 2^n d_n(a)") {
  std::uint64_t state = 31337;
  for (int i = 0; i < 1000; ++i) {
    const double t1 = (mix64(state++) % 1000) / 1000.0;
    double t2 = (mix64(state++) % 1000) / 1000.0;
    if (t2 == t1) t2 = t1 + 1e-3;
    const unsigned n1 = 1 + mix64(state++) % 2;
    const unsigned n2 = 1 + mix64(state++) % 2;
    const std::uint64_t a = 1 + mix64(state++) % 10'000;
    MomentRequest req({std::min(t1, t2), std::max(t1, t2)}, {n1, n2},
                      Variant::plus);
    const auto dn = static_cast<double>(divisor_count_n(n1 + n2, a));
    CHECK(std::abs(b_coefficient(Variant::plus, req, a)) <= dn + 1e-9);
    CHECK(std::abs(b_coefficient(Variant::minus, req, a)) <=
          std::pow(2.0, n1 + n2) * dn + 1e-9);
  }
}

TEST_CASE("theoretical_moment trivial zeros and the combined split") {
  MomentRequest half({0.5}, {1}, Variant::plus);
  auto v = theoretical_moment(half, 500);
  CHECK(v.value == 0.0);
  CHECK(v.tail_bound == 0.0);  // sup_b |sin(pi b)| = 0 certifies the tail

  MomentRequest req_c({0.3}, {2}, Variant::combined);
  MomentRequest req_p({0.3}, {2}, Variant::plus);
  MomentRequest req_m({0.3}, {2}, Variant::minus);
  auto c = theoretical_moment(req_c, 2000);
  auto p = theoretical_moment(req_p, 2000);
  auto m = theoretical_moment(req_m, 2000);
  CHECK(c.value == 0.5 * (p.value + m.value));
  CHECK(c.tail_bound == 0.5 * (p.tail_bound + m.tail_bound));

  CHECK_THROWS_AS(theoretical_moment(half, 0), std::invalid_argument);
}

TEST_CASE("theoretical_moment is invariant under permuting the pairs") {
  MomentRequest fwd({0.2, 0.45, 0.8}, {2, 1, 1}, Variant::plus);
  MomentRequest perm({0.8, 0.2, 0.45}, {1, 2, 1}, Variant::plus);
  CHECK(theoretical_moment(fwd, 3000).value ==
        theoretical_moment(perm, 3000).value);
}

TEST_CASE("even one-point plus moments are nonnegative up to the tail") {
  for (unsigned m : {1u, 2u, 3u}) {
    MomentRequest req({0.37}, {2 * m}, Variant::plus);
    auto v = theoretical_moment(req, 400);
    CHECK(v.value + v.tail_bound >= 0.0);
  }
}

TEST_CASE("tail bound is a true majorant of the dropped terms") {
  // Compare the certified tail at A with the actually-summed terms in
  // (A, A']; the bound must dominate the partial difference.
  MomentRequest req({0.3}, {2}, Variant::plus);
  auto small = theoretical_moment(req, 2000);
  auto big = theoretical_moment(req, 60'000);
  CHECK(std::abs(big.value - small.value) <= small.tail_bound);
  CHECK(small.tail_bound > 0.0);
  // And the bound shrinks with A.
  CHECK(big.tail_bound < small.tail_bound);
}

TEST_CASE("Carleman-scale growth envelope for even moments") {
  // |M(2m)| <= ((2^{2m}+1)/2) (1/pi^{2m}) (sum_{a<=A} d_{2m}(a^2)/a^2 + tail).
  const std::uint64_t A = 400;
  const SpfTable spf = smallest_prime_factor_table(A);
  for (unsigned m : {1u, 2u, 3u}) {
    const unsigned deg = 2 * m;
    MomentRequest req({0.37}, {deg}, Variant::combined);
    auto v = theoretical_moment(req, A);
    double series = 0.0;
    for (std::uint64_t a = 1; a <= A; ++a)
      series += static_cast<double>(divisor_count_n(deg, a * a)) /
                (static_cast<double>(a) * a);
    series += divisor_square_tail(deg, A);
    const double envelope = 0.5 * (std::pow(2.0, deg) + 1.0) * series /
                            std::pow(kPi, deg);
    CHECK(std::abs(v.value) <= envelope);
  }
}

TEST_CASE("exact fourth moment equals exhaustive sign enumeration, N <= 6") {
  for (unsigned N : {1u, 2u, 3u, 4u, 5u, 6u}) {
    for (auto [s, t] : std::vector<std::pair<double, double>>{
             {0.1, 0.2}, {0.3, 0.7}, {0.0, 1.0}, {0.05, 0.9}}) {
      const double exact = increment_fourth_moment_exact(N, s, t);
      const double brute = oracle::exhaustive_fourth_moment(N, s, t);
      CHECK(std::abs(exact - brute) <= 1e-12);
    }
  }
}

TEST_CASE("exact fourth moment edge cases and guards") {
  CHECK(increment_fourth_moment_exact(64, 0.4, 0.4) == 0.0);
  CHECK(increment_fourth_moment_exact(64, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(increment_fourth_moment_exact(64, 0.5, 0.2),
                  std::domain_error);
  CHECK_THROWS_AS(increment_fourth_moment_exact(513, 0.1, 0.2),
                  capacity_error);
}

TEST_CASE("exact fourth moment envelope at N = 256") {
  CHECK(increment_fourth_moment_exact(256, 0.3, 0.35) <=
        50.0 * std::pow(0.05, 1.5));
}

TEST_CASE("exact vs Monte Carlo fourth moment") {
  for (std::uint32_t N : {16u, 64u}) {
    for (auto [s, t] : std::vector<std::pair<double, double>>{
             {0.1, 0.2}, {0.25, 0.6}, {0.4, 0.95}}) {
      const double exact = increment_fourth_moment_exact(N, s, t);
      auto mc = increment_fourth_moment_mc(N, s, t, 5000, 1234);
      CHECK(std::abs(exact - mc.estimate) <= 4.0 * mc.std_error);
    }
  }
}

TEST_CASE("empirical_moment trivial zeros and validation") {
  MomentRequest at_zero({0.0, 0.4}, {1, 2}, Variant::combined);
  CHECK(empirical_moment(at_zero, 500) == 0.0);
  MomentRequest at_one({0.4, 1.0}, {2, 1}, Variant::combined);
  CHECK(empirical_moment(at_one, 500) == 0.0);

  MomentRequest req({0.3}, {2}, Variant::combined);
  CHECK_THROWS_AS(empirical_moment(req, 50), std::invalid_argument);
  CHECK_THROWS_AS(empirical_moment(req, 500, PathMode::polya, 0.0),
                  std::invalid_argument);
}

TEST_CASE("empirical_moment variants partition the family") {
  // combined average over all primes = weighted mean of the class averages.
  MomentRequest reqc({0.3}, {2}, Variant::combined);
  MomentRequest reqp({0.3}, {2}, Variant::plus);
  MomentRequest reqm({0.3}, {2}, Variant::minus);
  const std::uint64_t Q = 1000;
  auto primes = sieve_primes(Q, 2 * Q);
  double n_plus = 0, n_minus = 0;
  for (auto p : primes) (p % 4 == 1 ? n_plus : n_minus) += 1.0;
  const double combined = empirical_moment(reqc, Q);
  const double plus = empirical_moment(reqp, Q);
  const double minus = empirical_moment(reqm, Q);
  CHECK(combined ==
        doctest::Approx((n_plus * plus + n_minus * minus) /
                        (n_plus + n_minus))
            .epsilon(1e-12));
}

TEST_CASE("empirical_moment polya mode tracks the exact mode") {
  MomentRequest req({0.3}, {2}, Variant::combined);
  const double exact = empirical_moment(req, 1000);
  const double polya = empirical_moment(req, 1000, PathMode::polya, 8000.0);
  CHECK(std::abs(exact - polya) <= 0.02);
}

TEST_CASE("moment_gap at a degenerate point is the empirical value") {
  MomentRequest req({0.5}, {1}, Variant::plus);
  auto gap = moment_gap(req, 1000, 2000);
  CHECK(gap.theoretical.value == 0.0);
  CHECK(gap.gap == std::abs(gap.empirical));
}

TEST_CASE("moment gaps shrink across the Q sweep") {
  MomentRequest req({0.3}, {2}, Variant::combined);
  auto theory = theoretical_moment(req, 100'000);
  double g1 = std::abs(empirical_moment(req, 1000) - theory.value);
  double g2 = std::abs(empirical_moment(req, 10'000) - theory.value);
  CHECK(g2 <= 0.05);
  // The paper guarantees only eventual decay; allow one inversion by
  // checking the endpoint improves on the start.
  CHECK(g2 <= g1);
}
