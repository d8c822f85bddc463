#pragma once

// Exact integer arithmetic: deterministic primality, bounded-work
// factorization, divisor enumeration, square roots modulo prime powers and
// composites, squarefree decomposition, rational reconstruction of a residue,
// and centered residues. Everything is exact; nothing here samples.

#include <optional>
#include <utility>
#include <vector>

#include "hypell/errors.hpp"
#include "hypell/ints.hpp"

namespace hypell::arith {

// |n| <= FACTOR_MAX is the certified operating range for factorize()
inline constexpr i128 FACTOR_MAX = (static_cast<i128>(1) << 100);

struct Factorization {
  i128 n = 0;                                // original value, nonzero
  std::vector<std::pair<i128, int>> factors; // ascending primes, exponents >= 1

  bool negative() const { return n < 0; }
  i128 abs_value() const { return abs128(n); }
};

struct FactorizeLimits {
  u64 trial_bound = 100000;        // trial division cutoff
  u64 rho_iteration_budget = 1u << 27;  // total Pollard iterations before giving up
};

// deterministic Miller-Rabin, certified for every n < 2^64; n < 2 is a
// domain error (callers decide what 0/1 mean for them)
bool is_prime(u64 n);

// n != 0 required; unit inputs (|n| = 1) give an empty factor list.
// Throws FactorError when the work bound is hit or a cofactor is out of range.
Factorization factorize(i128 n, const FactorizeLimits& limits = {});

// all positive divisors of |f.n|, ascending
std::vector<i128> all_divisors(const Factorization& f);

// positive divisors of |f.n| in [lo, hi], ascending (lo clamped to 1)
std::vector<i128> divisors_in_interval(const Factorization& f, i128 lo, i128 hi);

struct Rational {
  i128 num = 0;
  i128 den = 1;  // > 0, reduced
};

Rational make_rational(i128 num, i128 den);

// r = d1*d2*d3 / (gcd(d1,d2)*gcd(d1,d3)*gcd(d2,d3)) as an exact rational.
// When d1,d2,d3 all divide n, r is an integer divisor of n; pass n to assert.
Rational gcd_triple_ratio(i128 d1, i128 d2, i128 d3,
                          std::optional<i128> common_multiple = std::nullopt);

// all z in [0, N) with z^2 = A (mod N), ascending; N >= 1.
// Handles gcd(A, N) > 1, prime powers and composite N (via CRT).
std::vector<i64> sqrt_mod(i64 A, i64 N);

// A = A1 * B1^2 with A1 squarefree, B1 >= 1, sign(A1) = sign(A); A != 0
std::pair<i64, i64> squarefree_decompose(i64 A);

// smallest-|v| pair (u, v) with L*v = u (mod p), |u| <= U, 1 <= |v| <= V,
// from the extended-Euclid remainder sequence of (p, L). Complete whenever
// 2*U*V < p; absence is a value, not an error.
std::optional<std::pair<i64, i64>> rational_reconstruct(i64 L, i64 p, i64 U, i64 V);

// representative of a residue class in (-p/2, p/2); p odd so there are no ties
struct CenteredResidue {
  i64 value = 0;
  i64 modulus = 0;
};

CenteredResidue centered(i64 x, i64 p);
CenteredResidue centered128(i128 x, i64 p);

}  // namespace hypell::arith
