#include "hypell/ints.hpp"

#include <algorithm>

namespace hypell {

std::string to_string_i128(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  u128 v = neg ? static_cast<u128>(-x) : static_cast<u128>(x);
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

u128 isqrt_u128(u128 n) {
  if (n == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<double>(n)));
  if (r > 2) r -= 2;
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

u128 ikth_root(u128 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("ikth_root: k must be >= 1");
  if (k == 1 || n <= 1) return n;
  if (k == 2) return isqrt_u128(n);
  // float seed, then exact fixup; overflow-safe powering via division checks
  auto pow_leq = [&](u128 base, u128 limit) {
    // base^k <= limit ?
    u128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (base != 0 && acc > limit / base) return false;
      acc *= base;
    }
    return acc <= limit;
  };
  u128 r = static_cast<u128>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && !pow_leq(r, n)) --r;
  while (pow_leq(r + 1, n)) ++r;
  return r;
}

i64 inv_mod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = floor_mod(a, m);
  while (a1) {
    i64 q = g / a1;
    g -= q * a1;
    std::swap(g, a1);
    x -= q * x1;
    std::swap(x, x1);
  }
  if (g != 1) throw std::domain_error("inv_mod: arguments not coprime");
  return floor_mod(x, m);
}

}  // namespace hypell
