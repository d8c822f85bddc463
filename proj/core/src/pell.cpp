#include "hypell/pell.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hypell/arith.hpp"

namespace hypell::pell {

namespace {

bool is_square_i64(i64 n, i64* root = nullptr) {
  if (n < 0) return false;
  u64 r = isqrt_u64(static_cast<u64>(n));
  if (root) *root = static_cast<i64>(r);
  return static_cast<i64>(r) * static_cast<i64>(r) == n;
}

i128 gcd_i128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bigint to_bigint(i128 v) { return bigint(to_string_i128(v)); }

// Primitive solutions (gcd(x,y)=1) of x^2 - A y^2 = E for squarefree A >= 2,
// E != 0, restricted to 1 <= x <= x_max, 1 <= y <= y_max. Solutions sharing a
// residue class x = z*y (mod |E|), z^2 = A (mod |E|), form a single ladder
// under the unit action, so the minimal member of each class is located by a
// bounded ascending scan and the rest are generated from it. Any solution
// below the caller's bound descends to a class minimum that is itself below
// min(x_max, x0*sqrt(|E|) + |E|), which the scan covers.
std::vector<std::pair<i128, i128>> primitive_solutions(i64 A, i64 E,
                                                       const PellFundamental& fund,
                                                       i128 x_max, i128 y_max) {
  std::vector<std::pair<i128, i128>> out;
  if (x_max < 1 || y_max < 1) return out;
  const i64 absE = std::abs(E);

  std::vector<i64> classes = arith::sqrt_mod(floor_mod(A, absE), absE);
  if (classes.empty()) return out;
  std::set<i64> unseen(classes.begin(), classes.end());
  std::map<i64, std::pair<i128, i128>> minima;

  i128 scan_x = x_max;
  const i64 root_e = static_cast<i64>(isqrt_u64(static_cast<u64>(absE))) + 1;
  bigint scan_cap = fund.x0 * root_e + absE;
  if (scan_cap < to_bigint(scan_x)) scan_x = static_cast<i128>(scan_cap.convert_to<long long>());

  // every class minimum has y below 2*x0*y0*(sqrt(|E|)+1); capping the scan
  // there leaves the rest of each ladder to the climb below
  i128 y_cap = static_cast<i128>(1) << 100;
  bigint min_cap = 2 * fund.x0 * fund.y0 * root_e + 2;
  if (min_cap < (bigint(1) << 62)) y_cap = static_cast<i128>(min_cap.convert_to<long long>());

  for (i128 y = 1; y <= y_cap && static_cast<i128>(A) * y * y <= scan_x * scan_x - E; ++y) {
    i128 xx = static_cast<i128>(E) + static_cast<i128>(A) * y * y;
    if (xx < 1) continue;
    i128 x;
    if (!is_perfect_square(xx, &x)) continue;
    if (gcd_i128(x, y) != 1) continue;
    if (x <= x_max && y <= y_max) out.emplace_back(x, y);
    i64 ymod = static_cast<i64>(y % absE);
    if (std::gcd(ymod, absE) != 1) continue;  // unreachable for primitive pairs
    i64 z = static_cast<i64>(inv_mod(ymod, absE) * (x % absE) % absE);
    if (unseen.erase(z)) {
      minima.emplace(z, std::make_pair(x, y));
      if (unseen.empty()) break;  // every class minimum located
    }
  }

  // climb each class ladder with the fundamental unit
  const bigint bx = to_bigint(x_max), by = to_bigint(y_max);
  for (const auto& [z, m] : minima) {
    bigint cx = to_bigint(m.first), cy = to_bigint(m.second);
    for (;;) {
      bigint nx = cx * fund.x0 + A * cy * fund.y0;
      bigint ny = cx * fund.y0 + cy * fund.x0;
      if (nx > bx || ny > by) break;
      out.emplace_back(static_cast<i128>(nx.convert_to<long long>()),
                       static_cast<i128>(ny.convert_to<long long>()));
      cx = nx;
      cy = ny;
    }
  }
  return out;
}

}  // namespace

PellFundamental fundamental_solution(i64 A, std::size_t period_cap) {
  if (A < 2) throw DomainError("fundamental_solution: A must be >= 2");
  i64 a0;
  if (is_square_i64(A, &a0)) throw DomainError("fundamental_solution: A is a perfect square");

  // continued fraction of sqrt(A), exact integer recurrences:
  //   P' = a*Q - P, Q' = (A - P'^2)/Q, a' = (a0 + P')/Q'
  // convergents h/k checked against the unit equation each step
  i64 P = 0, Q = 1, a = a0;
  bigint h_prev = 1, h = a0, k_prev = 0, k = 1;
  for (std::size_t steps = 0; steps < period_cap; ++steps) {
    if (h * h - A * k * k == 1) return PellFundamental{A, h, k};
    P = a * Q - P;
    Q = (A - P * P) / Q;
    a = (a0 + P) / Q;
    bigint h_next = a * h + h_prev;
    bigint k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = std::move(h_next);
    k = std::move(k_next);
  }
  throw OverflowError("fundamental_solution: continued fraction period cap exceeded");
}

std::pair<bigint, bigint> compose(i64 A, const std::pair<bigint, bigint>& s,
                                  const std::pair<bigint, bigint>& t) {
  return {s.first * t.first + A * s.second * t.second,
          s.first * t.second + s.second * t.first};
}

PairSet pell_orbit(const PellFundamental& f, i64 bound) {
  if (bound < 1) throw DomainError("pell_orbit: bound must be >= 1");
  PairSet out;
  bigint x = f.x0, y = f.y0;
  while (x <= bound) {
    out.insert({x.convert_to<i64>(), y.convert_to<i64>()});
    auto n = compose(f.A, {x, y}, {f.x0, f.y0});
    x = n.first;
    y = n.second;
  }
  return out;
}

PairSet pell_orbit(i64 A, i64 bound, std::size_t period_cap) {
  return pell_orbit(fundamental_solution(A, period_cap), bound);
}

PairSet solve_pell_like(const PellLikeInstance& inst, bool all_signs) {
  const i64 A = inst.A, E = inst.E, bound = inst.bound;
  if (E == 0) throw DomainError("solve_pell_like: E must be nonzero");
  if (bound < 1) throw DomainError("solve_pell_like: bound must be >= 1");
  if (A >= 0 && is_square_i64(A)) throw DomainError("solve_pell_like: A must not be a perfect square");

  PairSet sols;
  auto push = [&](i64 x, i64 y) {
    sols.insert({x, y});
    if (all_signs) {
      sols.insert({-x, y});
      sols.insert({x, -y});
      sols.insert({-x, -y});
    }
  };

  if (A < 0) {
    // x^2 + |A| y^2 = E: finitely many, direct enumeration
    for (i64 y = 1; E > 0 && static_cast<i128>(-A) * y * y <= static_cast<i128>(E) - 1; ++y) {
      i128 x;
      if (is_perfect_square(static_cast<i128>(E) + static_cast<i128>(A) * y * y, &x) && x >= 1 &&
          x <= bound && y <= bound)
        push(static_cast<i64>(x), y);
    }
    return sols;
  }

  auto [A1, B1] = arith::squarefree_decompose(A);
  PellFundamental fund = fundamental_solution(A1);

  // split off d = gcd(x, w), d^2 | E, and solve the primitive equation in
  // (x/d, w/d) where w = B1*y absorbs the square part of A
  arith::Factorization fE = arith::factorize(static_cast<i128>(std::abs(E)));
  for (i128 d : arith::all_divisors(fE)) {
    if (d * d > std::abs(E) || std::abs(E) % static_cast<i64>(d * d) != 0) continue;
    i64 Ered = static_cast<i64>(E / static_cast<i64>(d * d));
    i128 x_max = static_cast<i128>(bound) / d;
    i128 w_max = static_cast<i128>(B1) * bound / d;
    for (auto [X, W] : primitive_solutions(A1, Ered, fund, x_max, w_max)) {
      i128 x = d * X, w = d * W;
      if (w % B1 != 0) continue;
      i128 y = w / B1;
      if (x >= 1 && x <= bound && y >= 1 && y <= bound)
        push(static_cast<i64>(x), static_cast<i64>(y));
    }
  }
  return sols;
}

}  // namespace hypell::pell
