#include "legendre/number_theory.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace legendre {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool matches_class(std::uint64_t p, PrimeClass cls) {
  switch (cls) {
    case PrimeClass::all: return true;
    case PrimeClass::one_mod_four: return p % 4 == 1;
    case PrimeClass::three_mod_four: return p % 4 == 3;
  }
  return false;
}

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

PrimeRecord prime_record(std::uint64_t p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("prime_record: " + std::to_string(p) +
                                " is not an odd prime");
  PrimeRecord rec;
  rec.p = p;
  rec.residue_class = static_cast<int>(p % 4);
  rec.epsilon = (rec.residue_class == 1) ? std::complex<double>(1.0, 0.0)
                                         : std::complex<double>(0.0, 1.0);
  return rec;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = mulmod_u64(result, base, mod);
    base = mulmod_u64(base, base, mod);
    exp >>= 1;
  }
  return result;
}

// -----------------------------------------------------------------------
// Segmented sieve of Eratosthenes.
// -----------------------------------------------------------------------

namespace {

// Simple sieve for the base primes up to `limit`.
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint8_t> is_prime(limit + 1, 1);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!is_prime[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
  }
  return primes;
}

constexpr std::uint64_t kSegmentSize = 1u << 20;

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi)
    throw std::invalid_argument("sieve_primes: lo > hi");
  if (hi > kSieveLimit)
    throw capacity_error("sieve_primes: hi exceeds the 2^40 guard");
  if (hi < 2) return {};
  if (lo < 2) lo = 2;

  const std::uint64_t root =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<std::uint64_t> base = simple_sieve(root);

  std::vector<std::uint64_t> primes;
  std::vector<std::uint8_t> segment(kSegmentSize);
  for (std::uint64_t low = lo; low <= hi; low += kSegmentSize) {
    std::uint64_t high = std::min(hi, low + kSegmentSize - 1);
    std::fill(segment.begin(), segment.begin() + (high - low + 1), 1);
    for (std::uint64_t q : base) {
      if (q * q > high) break;
      std::uint64_t start = std::max(q * q, ((low + q - 1) / q) * q);
      for (std::uint64_t j = start; j <= high; j += q) segment[j - low] = 0;
    }
    for (std::uint64_t n = low; n <= high; ++n)
      if (segment[n - low] && n >= 2) primes.push_back(n);
  }
  return primes;
}

// -----------------------------------------------------------------------
// Linear sieve: smallest prime factor of every n <= N in O(N).
// -----------------------------------------------------------------------

SpfTable smallest_prime_factor_table(std::uint64_t N) {
  if (N < 2)
    throw std::invalid_argument("smallest_prime_factor_table: N must be >= 2");
  if (N > kSpfLimit)
    throw capacity_error("smallest_prime_factor_table: N exceeds the 2^31 guard");

  SpfTable table;
  table.spf.assign(N + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (table.spf[i] == 0) {
      table.spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t q : primes) {
      if (q > table.spf[i] || q * i > N) break;
      table.spf[q * i] = q;
    }
  }
  return table;
}

// -----------------------------------------------------------------------
// Jacobi symbol.  The recursion tolerates any odd modulus; the Legendre
// meaning requires p prime, asserted in debug builds.
// -----------------------------------------------------------------------

namespace {

int jacobi_u64(std::uint64_t a, std::uint64_t n) {
  // n odd, n >= 3
  a %= n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::uint64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

int legendre_symbol(std::int64_t n, std::uint64_t p) {
  assert(is_odd_prime(p) && "legendre_symbol: p must be an odd prime");
  std::int64_t m = n % static_cast<std::int64_t>(p);
  if (m < 0) m += static_cast<std::int64_t>(p);
  return jacobi_u64(static_cast<std::uint64_t>(m), p);
}

// -----------------------------------------------------------------------
// Full symbol table.  One pass over [2, p-1]: Euler's criterion
// chi_p(q) = q^((p-1)/2) mod p on primes, multiplicative extension via the
// smallest prime factor elsewhere.
// -----------------------------------------------------------------------

SymbolTable symbol_table(std::uint64_t p, const SpfTable& spf) {
  if (p > kSymbolTableLimit)
    throw capacity_error("symbol_table: p exceeds the 2^26 guard");
  if (!is_odd_prime(p))
    throw std::invalid_argument("symbol_table: " + std::to_string(p) +
                                " is not an odd prime");
  if (spf.limit() + 1 < p)
    throw std::invalid_argument("symbol_table: spf table too small");

  SymbolTable table;
  table.p = p;
  table.values.assign(p, 0);
  table.values[1] = 1;
  const std::uint64_t half = (p - 1) / 2;
  for (std::uint64_t n = 2; n < p; ++n) {
    std::uint64_t q = spf[n];
    if (q == n) {
      std::uint64_t e = powmod_u64(n, half, p);
      table.values[n] = (e == 1) ? 1 : -1;
    } else {
      table.values[n] =
          static_cast<std::int8_t>(table.values[q] * table.values[n / q]);
    }
  }
  return table;
}

SymbolTable symbol_table(std::uint64_t p) {
  if (p > kSymbolTableLimit)
    throw capacity_error("symbol_table: p exceeds the 2^26 guard");
  if (p == 3) {
    // SpfTable requires N >= 2; p = 3 only needs chi(1), chi(2).
    SymbolTable table;
    table.p = 3;
    table.values = {0, 1, -1};
    return table;
  }
  return symbol_table(p, smallest_prime_factor_table(p - 1));
}

// -----------------------------------------------------------------------
// Gauss sum.
// -----------------------------------------------------------------------

std::complex<double> gauss_sum(const SymbolTable& table) {
  const std::uint64_t p = table.p;
  if (p > kGaussSumLimit)
    throw capacity_error("gauss_sum: p exceeds the direct-summation guard");
  KahanSum re, im;
  const double inv_p = 1.0 / static_cast<double>(p);
  for (std::uint64_t a = 1; a < p; ++a) {
    int chi = table.values[a];
    double x = static_cast<double>(a) * inv_p;  // in (0, 1)
    re.add(chi * cos2pi_frac(x));
    im.add(chi * sin2pi_frac(x));
  }
  return {re.value(), im.value()};
}

std::complex<double> gauss_sum(std::uint64_t p) {
  if (p > kGaussSumLimit)
    throw capacity_error("gauss_sum: p exceeds the direct-summation guard");
  return gauss_sum(symbol_table(p));
}

std::complex<double> gauss_sum_closed_form(std::uint64_t p) {
  PrimeRecord rec = prime_record(p);
  double root = std::sqrt(static_cast<double>(p));
  return rec.epsilon * root;
}

}  // namespace legendre
