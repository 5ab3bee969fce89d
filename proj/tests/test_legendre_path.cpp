#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "legendre/legendre_path.hpp"
#include "oracles.hpp"

using namespace legendre;

namespace {

// Quadrature oracle for FT_p(h): composite Simpson on each linear segment,
// reading the vertex polygon directly.
std::complex<double> ft_by_quadrature(const LegendrePath& path,
                                      std::int64_t h) {
  const std::uint64_t p = path.prime.p;
  std::complex<double> total = 0.0;
  for (std::uint64_t j = 0; j < p; ++j) {
    const double t0 = static_cast<double>(j) / p;
    const double t1 = static_cast<double>(j + 1) / p;
    const double v0 = path.vertices[j];
    const double v1 = path.vertices[j + 1];
    total += oracle::simpson(
        [&](double t) {
          const double f = v0 + (t - t0) / (t1 - t0) * (v1 - v0);
          const double phase = -2.0 * kPi * static_cast<double>(h) * t;
          return f * std::complex<double>(std::cos(phase), std::sin(phase));
        },
        t0, t1, 512);
  }
  return total;
}

}  // namespace

TEST_CASE("build_path vertex lists for p = 3 and p = 5") {
  // chi_3 = (+1, -1) and chi_5 = (+1, -1, -1, +1) by the residue-set oracle.
  CHECK(oracle::residue_set_chi(1, 3) == 1);
  CHECK(oracle::residue_set_chi(2, 3) == -1);

  auto p3 = build_path(3);
  REQUIRE(p3.vertices.size() == 4);
  const double r3 = std::sqrt(3.0);
  CHECK(p3.vertices[0] == 0.0);
  CHECK(p3.vertices[1] * r3 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p3.vertices[2] == 0.0);
  CHECK(p3.vertices[3] == 0.0);

  auto p5 = build_path(5);
  REQUIRE(p5.vertices.size() == 6);
  const double r5 = std::sqrt(5.0);
  CHECK(p5.vertices[1] * r5 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p5.vertices[2] == 0.0);
  CHECK(p5.vertices[3] * r5 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(p5.vertices[4] == 0.0);
  CHECK(p5.vertices[5] == 0.0);
}

TEST_CASE("path invariants hold exactly (integer increments, symmetry)") {
  const SpfTable spf = smallest_prime_factor_table(2000);
  for (std::uint64_t p : sieve_primes(3, 2000)) {
    auto table = symbol_table(p, spf);
    auto path = build_path(table);
    REQUIRE(path.vertices.size() == p + 1);
    CHECK(path.vertices[0] == 0.0);
    CHECK(path.vertices[p - 1] == 0.0);
    CHECK(path.vertices[p] == 0.0);

    // Increments are +-1/sqrt(p) at the integer level: vertices are the
    // exact integer sums scaled by a common factor.
    const double inv_root = 1.0 / std::sqrt(static_cast<double>(p));
    std::int64_t sum = 0;
    for (std::uint64_t j = 1; j < p; ++j) {
      const int step = table.value(j);
      CHECK((step == 1 || step == -1));
      sum += step;
      CHECK(path.vertices[j] == static_cast<double>(sum) * inv_root);
    }

    CHECK(symmetry_defect(path) == 0.0);
  }
}

TEST_CASE("p = 7 has the even symmetry of the 3 mod 4 class") {
  auto path = build_path(7);
  for (std::uint64_t j = 0; j <= 6; ++j)
    CHECK(path.vertices[6 - j] == path.vertices[j]);
  CHECK(symmetry_defect(build_path(991)) == 0.0);
  CHECK(symmetry_defect(build_path(997)) == 0.0);
}

TEST_CASE("eval_path interpolation") {
  auto p3 = build_path(3);
  CHECK(eval_path(p3, 0.0) == 0.0);
  CHECK(eval_path(p3, 1.0) == 0.0);
  CHECK(eval_path(p3, 0.5) ==
        doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-15));

  // Vertex values are reproduced exactly at t = j/p.
  for (std::uint64_t p : {5ULL, 97ULL, 991ULL}) {
    auto path = build_path(p);
    for (std::uint64_t j = 0; j <= p; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(p);
      CHECK(eval_path(path, t) == path.vertices[j]);
    }
  }

  CHECK_THROWS_AS(eval_path(p3, -0.1), std::domain_error);
  CHECK_THROWS_AS(eval_path(p3, 1.1), std::domain_error);
}

TEST_CASE("polya_approx trivial zeros") {
  auto table13 = symbol_table(13);  // 13 = 1 mod 4: sine branch
  CHECK(polya_approx(table13, 0.5, 50.0) == 0.0);
  CHECK(polya_approx(table13, 0.0, 50.0) == 0.0);
  auto table7 = symbol_table(7);  // cosine branch
  CHECK(polya_approx(table7, 0.0, 50.0) == 0.0);
  CHECK_THROWS_AS(polya_approx(table7, 0.3, 0.5), std::invalid_argument);
}

TEST_CASE("polya_approx at p = 997 lands within the error budget") {
  auto table = symbol_table(997);
  auto path = build_path(table);
  const double budget = polya_budget(997, 997.0).error_budget;
  const double diff =
      std::abs(polya_approx(table, 0.25, 997.0) - eval_path(path, 0.25));
  CHECK(diff <= budget);
}

TEST_CASE("polya accuracy sweep: 20 primes, 100 points, Z in {p, 4p}") {
  auto primes = sieve_primes(1000, 10'000);
  const SpfTable spf = smallest_prime_factor_table(10'000);
  const std::size_t stride = primes.size() / 20;
  for (std::size_t pick = 0; pick < 20; ++pick) {
    const std::uint64_t p = primes[pick * stride];
    auto table = symbol_table(p, spf);
    auto path = build_path(table);
    for (double z_mult : {1.0, 4.0}) {
      const double Z = z_mult * static_cast<double>(p);
      const double budget = polya_budget(p, Z).error_budget;
      for (int i = 0; i < 100; ++i) {
        const double t = static_cast<double>(i) / 99.0;
        CHECK(std::abs(polya_approx(table, t, Z) - eval_path(path, t)) <=
              budget);
      }
    }
  }
}

TEST_CASE("sup_norm") {
  CHECK(sup_norm(build_path(3)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(sup_norm(build_path(5)) ==
        doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  for (std::uint64_t p : sieve_primes(3, 500))
    CHECK(sup_norm(build_path(p)) >= 1.0 / std::sqrt(static_cast<double>(p)));
}

TEST_CASE("fourier_coefficient conventions and quadrature oracle") {
  auto p5 = build_path(5);
  CHECK(fourier_coefficient(p5, 0) == std::complex<double>(0.0, 0.0));

  // Exact closed form vs Simpson, several primes and frequencies.
  for (std::uint64_t p : {5ULL, 97ULL, 991ULL}) {
    auto path = build_path(p);
    for (std::int64_t h : {-3LL, -1LL, 1LL, 2LL, 7LL}) {
      auto exact = fourier_coefficient(path, h);
      auto quad = ft_by_quadrature(path, h);
      CHECK(std::abs(exact - quad) < 1e-9);
    }
  }

  // (p=5, h=1) within 5/sqrt(5) of 1/(2 pi i)  (chi_5(-1) = +1, eps = 1).
  const std::complex<double> lead(0.0, -1.0 / kTwoPi);
  CHECK(std::abs(fourier_coefficient(p5, 1) - lead) <= 5.0 / std::sqrt(5.0));
  CHECK(fourier_leading_term(p5.prime, 1) == lead);
}

TEST_CASE("fourier coefficients track the predicted leading term") {
  for (std::uint64_t p : {991ULL, 997ULL}) {
    auto path = build_path(p);
    const double root = std::sqrt(static_cast<double>(p));
    for (std::int64_t h = -10; h <= 10; ++h) {
      if (h == 0) continue;
      auto ft = fourier_coefficient(path, h);
      auto lead = fourier_leading_term(path.prime, h);
      CHECK(std::abs(ft - lead) <= 5.0 * std::abs(h) / root);
      // Magnitude envelope from the leading-term size.
      CHECK(std::abs(ft) <= 1.0 / (kTwoPi * std::abs(h)) + 5.0 / root);
    }
  }
}

TEST_CASE("fourier frequency guard") {
  auto path = build_path(5);
  CHECK_THROWS_AS(fourier_coefficient(path, 1'000'001), capacity_error);
}
