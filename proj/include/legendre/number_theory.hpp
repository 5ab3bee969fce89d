// number_theory.hpp
//
// Prime enumeration and quadratic-character primitives: segmented sieve,
// smallest-prime-factor tables, Legendre/Jacobi symbol, per-prime full
// symbol tables, and Gauss sums
//
//   tau(chi_p) = sum_{a=1}^{p} chi_p(a) e(a/p) = sqrt(p)      p = 1 mod 4
//                                              = i*sqrt(p)    p = 3 mod 4.

#ifndef LEGENDRE_NUMBER_THEORY_HPP
#define LEGENDRE_NUMBER_THEORY_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "legendre/common.hpp"

namespace legendre {

// Desk-scale guards.
inline constexpr std::uint64_t kSieveLimit = 1ULL << 40;
inline constexpr std::uint64_t kSpfLimit = 1ULL << 31;
inline constexpr std::uint64_t kSymbolTableLimit = 1ULL << 26;
inline constexpr std::uint64_t kGaussSumLimit = 1'000'000;

// Residue-class filter for samplers over prime families.
enum class PrimeClass { all, one_mod_four, three_mod_four };

bool matches_class(std::uint64_t p, PrimeClass cls);

// Trial-division primality check for odd p (intended for p within the
// symbol-table guard; cost is O(sqrt p)).
bool is_odd_prime(std::uint64_t p);

// An odd prime with its residue class mod 4 and the Gauss-sum unit
// eps_p = 1 (p = 1 mod 4) or i (p = 3 mod 4).
struct PrimeRecord {
  std::uint64_t p = 0;
  int residue_class = 0;  // p mod 4, in {1, 3}
  std::complex<double> epsilon;
};

// Validates primality and oddness.
PrimeRecord prime_record(std::uint64_t p);

// Primes in [lo, hi], strictly increasing.  Segmented: memory stays
// O(sqrt(hi) + segment) regardless of the range width.
std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi);

// Smallest prime factor of every 2 <= n <= N (linear sieve).
struct SpfTable {
  std::vector<std::uint32_t> spf;  // spf[n] for n <= N; spf[0] = spf[1] = 0

  std::uint64_t limit() const { return spf.size() - 1; }
  std::uint32_t operator[](std::uint64_t n) const { return spf[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
};

SpfTable smallest_prime_factor_table(std::uint64_t N);

// Legendre symbol (n/p) in {-1, 0, +1} via the Jacobi recursion
// (quadratic reciprocity), O(log^2) per call.  Requires odd prime p;
// primality is asserted in debug builds only.
int legendre_symbol(std::int64_t n, std::uint64_t p);

// Full character table chi_p(j) for j = 1..p-1.  values[0] = 0 so that
// chi(n) = values[n mod p] holds for every n.
struct SymbolTable {
  std::uint64_t p = 0;
  std::vector<std::int8_t> values;  // size p

  // chi_p at an arbitrary integer (periodic; negatives handled).
  int chi(std::int64_t n) const {
    std::int64_t m = n % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    return values[static_cast<std::uint64_t>(m)];
  }
  int value(std::uint64_t j) const { return values[j]; }  // 1 <= j <= p-1
};

// Builds the table in O(p): Euler's criterion on primes q < p, extended to
// all of [2, p-1] by complete multiplicativity along smallest prime factors.
SymbolTable symbol_table(std::uint64_t p);
SymbolTable symbol_table(std::uint64_t p, const SpfTable& spf);

// Gauss sum by direct summation with compensated accumulation, and the
// closed form sqrt(p) / i*sqrt(p) for cross-checking.
std::complex<double> gauss_sum(std::uint64_t p);
std::complex<double> gauss_sum(const SymbolTable& table);
std::complex<double> gauss_sum_closed_form(std::uint64_t p);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

}  // namespace legendre

#endif  // LEGENDRE_NUMBER_THEORY_HPP
