#pragma once

// Basic integer kit shared by all modules: 64/128-bit aliases, exact roots,
// modular primitives. Everything here is branch-of-math-free utility code.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <cmath>

namespace hypell {

using i32 = std::int32_t;
using i64 = std::int64_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

std::string to_string_i128(i128 x);

// floor(sqrt(n)), exact
inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

u128 isqrt_u128(u128 n);

// floor(n^(1/k)), exact, n >= 0, k >= 1
u128 ikth_root(u128 n, unsigned k);

// largest x with x^2 <= n, plus exactness test
inline bool is_perfect_square(i128 n, i128* root = nullptr) {
  if (n < 0) return false;
  u128 r = isqrt_u128(static_cast<u128>(n));
  if (root) *root = static_cast<i128>(r);
  return static_cast<i128>(r) * static_cast<i128>(r) == n;
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod_u64(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// mod with result in [0, m), any sign of x
inline i64 floor_mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

inline i128 floor_mod128(i128 x, i128 m) {
  i128 r = x % m;
  return r < 0 ? r + m : r;
}

// inverse of a mod m, gcd(a,m)=1 required
i64 inv_mod(i64 a, i64 m);

// floor / ceil of num/den for any signs, den != 0
inline i128 floor_div128(i128 num, i128 den) {
  i128 q = num / den, r = num % den;
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

inline i128 ceil_div128(i128 num, i128 den) {
  i128 q = num / den, r = num % den;
  if (r != 0 && ((r < 0) == (den < 0))) ++q;
  return q;
}

// deterministic splitmix64; used wherever the artifact needs seeded randomness
struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n), n >= 1, unbiased via rejection
  u64 below(u64 n) {
    u64 threshold = (0 - n) % n;
    for (;;) {
      u64 r = next();
      if (r >= threshold) return r % n;
    }
  }
  // uniform in [lo, hi] inclusive
  i64 range(i64 lo, i64 hi) {
    return lo + static_cast<i64>(below(static_cast<u64>(hi - lo + 1)));
  }
};

// per-trial generator: decorrelates trials from one master seed
inline SplitMix64 trial_rng(u64 master_seed, u64 trial_index) {
  SplitMix64 mixer(master_seed ^ (0x6a09e667f3bcc909ULL + trial_index * 0x9e3779b97f4a7c15ULL));
  mixer.next();
  return SplitMix64(mixer.next());
}

}  // namespace hypell
