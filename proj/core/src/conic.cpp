#include "hypell/conic.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "hypell/pell.hpp"

namespace hypell::conic {

namespace {

constexpr i64 COEFF_CAP = 1000000000;  // keeps every derived quantity inside i128

i128 delta_of(i64 A, i64 B, i64 C) {
  return static_cast<i128>(B) * B - 4 * static_cast<i128>(A) * C;
}

i128 pconst_of(i64 A, i64 B, i64 D, i64 E) {
  return static_cast<i128>(B) * D - 2 * static_cast<i128>(E) * A;
}

i128 tconst_of(i64 A, i64 B, i64 C, i64 D, i64 E, i64 F) {
  i128 P = pconst_of(A, B, D, E);
  i128 q = 4 * static_cast<i128>(A) * F - static_cast<i128>(D) * D;
  return P * P + delta_of(A, B, C) * q;
}

i128 eval(const ConicInstance& c, i128 x, i128 y) {
  return c.A * x * x + c.B * x * y + c.C * y * y + c.D * x + c.E * y + c.F;
}

}  // namespace

ConicInstance make_conic(i64 A, i64 B, i64 C, i64 D, i64 E, i64 F, i64 box) {
  if (box < 1) throw DomainError("make_conic: box must be >= 1");
  for (i64 v : {A, B, C, D, E, F})
    if (std::abs(v) > COEFF_CAP) throw DomainError("make_conic: coefficient magnitude over 10^9");
  ConicInstance c{A, B, C, D, E, F, delta_of(A, B, C), tconst_of(A, B, C, D, E, F), box};
  return c;
}

PairSet solve_conic_in_box(const ConicInstance& c, bool positive_filter) {
  if (c.box < 1) throw DomainError("solve_conic_in_box: box must be >= 1");
  if (c.delta != delta_of(c.A, c.B, c.C) ||
      c.tconst != tconst_of(c.A, c.B, c.C, c.D, c.E, c.F))
    throw DomainError("solve_conic_in_box: stored delta/tconst do not match coefficients");
  i128 root;
  if (c.delta >= 0 && is_perfect_square(c.delta, &root))
    throw DegenerateConicError("solve_conic_in_box: discriminant is a perfect square");
  // nonsquare delta = B^2 - 4AC rules out A = 0 and C = 0 outright
  const i128 P = pconst_of(c.A, c.B, c.D, c.E);

  i128 xb = abs128(c.delta) * c.box + abs128(P);
  i128 yb = (2 * abs128(static_cast<i128>(c.A)) + abs128(static_cast<i128>(c.B))) * c.box +
            std::abs(c.D);
  i128 bound = std::max(xb, yb);
  if (bound > (static_cast<i128>(1) << 62))
    throw OverflowError("solve_conic_in_box: transformed search bound exceeds 2^62");
  if (abs128(c.tconst) > (static_cast<i128>(1) << 62))
    throw OverflowError("solve_conic_in_box: transformed constant exceeds 2^62");

  std::vector<std::pair<i128, i128>> candidates;
  if (c.tconst == 0) {
    candidates.emplace_back(0, 0);  // delta nonsquare forces X = Y = 0
  } else {
    pell::PellLikeInstance inst{static_cast<i64>(c.delta), static_cast<i64>(c.tconst),
                                static_cast<i64>(std::max<i128>(bound, 1))};
    PairSet transformed = pell::solve_pell_like(inst, true);
    for (const auto& s : transformed.items()) candidates.emplace_back(s[0], s[1]);
    if (c.tconst > 0 && is_perfect_square(c.tconst, &root)) {
      candidates.emplace_back(root, 0);
      candidates.emplace_back(-root, 0);
    }
    if (c.tconst % c.delta == 0) {
      i128 q = -(c.tconst / c.delta);
      if (q > 0 && is_perfect_square(q, &root)) {
        candidates.emplace_back(0, root);
        candidates.emplace_back(0, -root);
      }
    }
  }

  PairSet out;
  for (auto [X, Y] : candidates) {
    i128 ynum = X - P;
    if (ynum % c.delta != 0) continue;
    i128 y = ynum / c.delta;
    if (abs128(y) > c.box) continue;
    i128 xnum = Y - c.B * y - c.D;
    i128 twoa = 2 * static_cast<i128>(c.A);
    if (xnum % twoa != 0) continue;
    i128 x = xnum / twoa;
    if (abs128(x) > c.box) continue;
    if (eval(c, x, y) != 0) continue;
    if (positive_filter && (x == 0 || y == 0)) continue;
    out.insert({static_cast<i64>(x), static_cast<i64>(y)});
  }
  out.canonicalize();
  return out;
}

i64 count_conic_solutions(const ConicInstance& c) {
  return static_cast<i64>(solve_conic_in_box(c, true).size());
}

PairSet solve_conic_brute(const ConicInstance& c) {
  if (c.box < 1) throw DomainError("solve_conic_brute: box must be >= 1");
  PairSet out;
  for (i64 y = -c.box; y <= c.box; ++y) {
    i128 b = static_cast<i128>(c.B) * y + c.D;
    i128 cc = static_cast<i128>(c.C) * y * y + static_cast<i128>(c.E) * y + c.F;
    if (c.A != 0) {
      i128 disc = b * b - 4 * static_cast<i128>(c.A) * cc;
      if (disc < 0) continue;
      i128 r;
      if (!is_perfect_square(disc, &r)) continue;
      for (i128 num : {-b + r, -b - r}) {
        i128 den = 2 * static_cast<i128>(c.A);
        if (num % den != 0) continue;
        i128 x = num / den;
        if (abs128(x) <= c.box) out.insert({static_cast<i64>(x), y});
      }
    } else if (b != 0) {
      if (cc % b != 0) continue;
      i128 x = -cc / b;
      if (abs128(x) <= c.box) out.insert({static_cast<i64>(x), y});
    } else if (cc == 0) {
      for (i64 x = -c.box; x <= c.box; ++x) out.insert({x, y});
    }
  }
  out.canonicalize();
  return out;
}

}  // namespace hypell::conic
