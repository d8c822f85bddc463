#include "hypell/arith.hpp"

#include <algorithm>
#include <array>

namespace hypell::arith {

namespace {

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("128-bit overflow in rational product");
  return out;
}

bool miller_rabin(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Pollard rho with Brent's cycle detection; deterministic constant schedule.
// Returns a nontrivial factor of composite odd n, or 0 if the iteration
// budget ran out.
u64 pollard_brent(u64 n, u64& budget) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1, q = 1, ys = y;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && d == 1; k += 128) {
        ys = y;
        u64 lim = std::min<u64>(128, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        if (budget < lim) return 0;
        budget -= lim;
        d = std::gcd(q, n);
      }
      r <<= 1;
      if (budget == 0) return 0;
    }
    if (d == n) {
      // backtrack one by one
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
    // rare: whole cycle collapsed, retry with next c
  }
}

void factor_u64_into(u64 n, std::vector<u64>& primes, u64& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_brent(n, budget);
  if (d == 0 || d == n) throw FactorError("factorization work bound exceeded at " + std::to_string(n));
  factor_u64_into(d, primes, budget);
  factor_u64_into(n / d, primes, budget);
}

struct Crt {
  i64 mod = 1;
  std::vector<i64> residues{0};
};

std::vector<i64> sqrt_mod_odd_prime_power(u64 a, u64 p, int alpha);
std::vector<i64> sqrt_mod_two_power(u64 a, int alpha);

// z^2 = a (mod p^alpha) for a unit a, both prime parities
std::vector<i64> sqrt_unit_mod_prime_power(u64 a, u64 p, int alpha) {
  return p == 2 ? sqrt_mod_two_power(a, alpha) : sqrt_mod_odd_prime_power(a, p, alpha);
}

u64 pow_u64(u64 b, int e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// Tonelli-Shanks, p odd prime, a a quadratic residue unit mod p
u64 tonelli_shanks(u64 a, u64 p) {
  if (p % 4 == 3) return powmod_u64(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod_u64(z, q, p);
  u64 t = powmod_u64(a, q, p), r = powmod_u64(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod_u64(t2, t2, p);
      ++i;
    }
    u64 b = powmod_u64(c, u64(1) << (m - i - 1), p);
    m = i;
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    r = mulmod_u64(r, b, p);
  }
  return r;
}

std::vector<i64> sqrt_mod_odd_prime_power(u64 a, u64 p, int alpha) {
  u64 q = pow_u64(p, alpha);
  a %= q;
  if (powmod_u64(a % p, (p - 1) / 2, p) != 1) return {};
  u64 w = tonelli_shanks(a % p, p);
  // Hensel: lift w from mod p^k to mod p^(k+1)
  u64 pk = p;
  for (int k = 1; k < alpha; ++k) {
    u64 pk1 = pk * p;
    u64 rem = static_cast<u64>((static_cast<u128>(w) * w + pk1 - a % pk1) % pk1);
    u64 t = (rem / pk) % p;
    u64 inv2w = static_cast<u64>(inv_mod(static_cast<i64>((2 * w) % p), static_cast<i64>(p)));
    u64 s = (p - mulmod_u64(t, inv2w, p)) % p;
    w = (w + s * pk) % pk1;
    pk = pk1;
  }
  std::vector<i64> out{static_cast<i64>(w), static_cast<i64>(q - w)};
  if (out[0] == out[1]) out.pop_back();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<i64> sqrt_mod_two_power(u64 a, int alpha) {
  u64 q = u64(1) << alpha;
  a %= q;
  std::vector<i64> sols;
  if (alpha <= 3) {
    for (u64 z = 0; z < q; ++z)
      if ((z * z) % q == a && (z & 1)) sols.push_back(static_cast<i64>(z));
    return sols;
  }
  if (a % 8 != 1) return {};
  // lift the four odd roots mod 8 one power of two at a time
  std::vector<u64> cur{1, 3, 5, 7};
  for (int k = 3; k < alpha; ++k) {
    u64 mod_next = u64(1) << (k + 1);
    std::vector<u64> next;
    for (u64 w : cur)
      for (u64 w2 : {w, w + (u64(1) << k)})
        if ((static_cast<u128>(w2) * w2 - a) % mod_next == 0) next.push_back(w2 % mod_next);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
  }
  for (u64 w : cur) sols.push_back(static_cast<i64>(w));
  return sols;
}

// z^2 = a (mod p^alpha), any a (including p | a)
std::vector<i64> sqrt_mod_prime_power(u64 a, u64 p, int alpha) {
  u64 q = pow_u64(p, alpha);
  a %= q;
  std::vector<i64> out;
  if (a == 0) {
    u64 step = pow_u64(p, (alpha + 1) / 2);
    for (u64 z = 0; z < q; z += step) out.push_back(static_cast<i64>(z));
    return out;
  }
  int j = 0;
  u64 rest = a;
  while (rest % p == 0) {
    rest /= p;
    ++j;
  }
  if (j % 2 != 0) return {};
  u64 half = pow_u64(p, j / 2);
  std::vector<i64> base = sqrt_unit_mod_prime_power(rest, p, alpha - j);
  u64 mod_rest = pow_u64(p, alpha - j);
  for (i64 w : base)
    for (u64 s = 0; s < half; ++s)
      out.push_back(static_cast<i64>((static_cast<u64>(w) + s * mod_rest) * half % q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) throw DomainError("is_prime: n must be >= 2");
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic base set for the full 64-bit range
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin(n, a)) return false;
  return true;
}

Factorization factorize(i128 n, const FactorizeLimits& limits) {
  if (n == 0) throw DomainError("factorize: n must be nonzero");
  if (abs128(n) > FACTOR_MAX) throw FactorError("factorize: |n| beyond supported range");
  Factorization f;
  f.n = n;
  u128 m = static_cast<u128>(abs128(n));
  std::vector<u64> primes;
  for (u64 d = 2; d <= limits.trial_bound && static_cast<u128>(d) * d <= m; d += (d == 2 ? 1 : 2)) {
    while (m % d == 0) {
      primes.push_back(d);
      m /= d;
    }
  }
  u64 budget = limits.rho_iteration_budget;
  if (m > 1) {
    // peel perfect powers first so large square/cube cofactors stay reachable
    for (unsigned k : {6, 5, 4, 3, 2}) {
      u128 r = ikth_root(m, k);
      u128 acc = 1;
      for (unsigned i = 0; i < k; ++i) acc *= r;
      if (r > 1 && acc == m) {
        if (r > std::numeric_limits<u64>::max())
          throw FactorError("factorize: cofactor root beyond 64-bit range");
        std::vector<u64> root_primes;
        factor_u64_into(static_cast<u64>(r), root_primes, budget);
        for (unsigned i = 0; i < k; ++i) primes.insert(primes.end(), root_primes.begin(), root_primes.end());
        m = 1;
        break;
      }
    }
  }
  if (m > 1) {
    if (m > std::numeric_limits<u64>::max())
      throw FactorError("factorize: cofactor " + to_string_i128(static_cast<i128>(m)) +
                        " beyond 64-bit range after trial division");
    factor_u64_into(static_cast<u64>(m), primes, budget);
  }
  std::sort(primes.begin(), primes.end());
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    f.factors.emplace_back(static_cast<i128>(primes[i]), static_cast<int>(j - i));
    i = j;
  }
  return f;
}

std::vector<i128> all_divisors(const Factorization& f) {
  std::vector<i128> divs{1};
  for (const auto& [p, e] : f.factors) {
    std::size_t base = divs.size();
    i128 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<i128> divisors_in_interval(const Factorization& f, i128 lo, i128 hi) {
  if (lo < 1) lo = 1;
  std::vector<i128> out;
  if (hi < lo) return out;
  for (i128 d : all_divisors(f))
    if (d >= lo && d <= hi) out.push_back(d);
  return out;
}

Rational make_rational(i128 num, i128 den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational gcd_triple_ratio(i128 d1, i128 d2, i128 d3, std::optional<i128> common_multiple) {
  if (d1 == 0 || d2 == 0 || d3 == 0) throw DomainError("gcd_triple_ratio: divisors must be nonzero");
  i128 num = 1, den = 1;
  for (i128 m : {abs128(d1), abs128(d2), abs128(d3)}) {
    i128 g = gcd128(m, den);
    den /= g;
    num = checked_mul(num, m / g);
  }
  for (i128 g : {gcd128(d1, d2), gcd128(d1, d3), gcd128(d2, d3)}) {
    i128 gg = gcd128(g, num);
    num /= gg;
    den = checked_mul(den, g / gg);
  }
  Rational r = make_rational(num, den);
  if (common_multiple) {
    i128 n = abs128(*common_multiple);
    if (r.den != 1 || r.num == 0 || n % r.num != 0)
      throw DomainError("gcd_triple_ratio: ratio is not a divisor of the supplied multiple");
  }
  return r;
}

std::vector<i64> sqrt_mod(i64 A, i64 N) {
  if (N < 1) throw DomainError("sqrt_mod: modulus must be >= 1");
  if (N == 1) return {0};
  u64 a = static_cast<u64>(floor_mod(A, N));
  Factorization f = factorize(static_cast<i128>(N));
  Crt acc;
  for (const auto& [p128, e] : f.factors) {
    u64 p = static_cast<u64>(p128);
    u64 q = pow_u64(p, e);
    std::vector<i64> part = sqrt_mod_prime_power(a % q, p, e);
    if (part.empty()) return {};
    Crt next;
    next.mod = acc.mod * static_cast<i64>(q);
    next.residues.clear();
    i64 m1 = acc.mod, m2 = static_cast<i64>(q);
    i64 inv = inv_mod(m1 % m2, m2);
    for (i64 r1 : acc.residues)
      for (i64 r2 : part) {
        i64 k = static_cast<i64>(mulmod_u64(static_cast<u64>(floor_mod(r2 - r1, m2)),
                                            static_cast<u64>(inv), static_cast<u64>(m2)));
        next.residues.push_back(r1 + m1 * k);
      }
    acc = std::move(next);
  }
  std::sort(acc.residues.begin(), acc.residues.end());
  return acc.residues;
}

std::pair<i64, i64> squarefree_decompose(i64 A) {
  if (A == 0) throw DomainError("squarefree_decompose: A must be nonzero");
  Factorization f = factorize(static_cast<i128>(A));
  i64 a1 = 1, b1 = 1;
  for (const auto& [p, e] : f.factors) {
    for (int i = 0; i < e / 2; ++i) b1 *= static_cast<i64>(p);
    if (e % 2) a1 *= static_cast<i64>(p);
  }
  return {A < 0 ? -a1 : a1, b1};
}

std::optional<std::pair<i64, i64>> rational_reconstruct(i64 L, i64 p, i64 U, i64 V) {
  if (p < 2) throw DomainError("rational_reconstruct: modulus must be >= 2");
  if (U < 0 || V < 1) throw DomainError("rational_reconstruct: bounds must satisfy U >= 0, V >= 1");
  i64 r_prev = p, t_prev = 0;
  i64 r = floor_mod(L, p), t = 1;
  while (true) {
    if (r <= U && std::abs(t) <= V) return std::make_pair(r, t);
    if (r == 0) return std::nullopt;
    i64 q = r_prev / r;
    i64 r_next = r_prev - q * r;
    i64 t_next = t_prev - q * t;
    r_prev = r;
    t_prev = t;
    r = r_next;
    t = t_next;
    if (std::abs(t) > V && r > U) return std::nullopt;  // both monotone past bounds
  }
}

CenteredResidue centered(i64 x, i64 p) {
  i64 r = floor_mod(x, p);
  return {2 * r > p ? r - p : r, p};
}

CenteredResidue centered128(i128 x, i64 p) {
  i128 r = floor_mod128(x, p);
  return {static_cast<i64>(2 * r > p ? r - p : r), p};
}

}  // namespace hypell::arith
