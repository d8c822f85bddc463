#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "hypell/conic.hpp"
#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/solution_set.hpp"

using namespace hypell;
using namespace hypell::conic;

// ---------------------------------------------------------------------------
// oracle: third implementation, independent of both library routes; solves
// A x^2 + (B y + D) x + (C y^2 + E y + F) = 0 row by row in exact integers

static bool isqrt128(i128 n, i128& r) {
  if (n < 0) return false;
  u128 u = static_cast<u128>(n);
  u128 s = isqrt_u128(u);
  if (s * s != u) return false;
  r = static_cast<i128>(s);
  return true;
}

static PairSet conic_oracle(i64 A, i64 B, i64 C, i64 D, i64 E, i64 F, i64 box) {
  PairSet out;
  for (i64 y = -box; y <= box; ++y) {
    const i128 b = static_cast<i128>(B) * y + D;
    const i128 c = static_cast<i128>(C) * y * y + static_cast<i128>(E) * y + F;
    if (A == 0) {
      if (b == 0) {
        if (c == 0)  // whole row solves; degenerate input, enumerate it anyway
          for (i64 x = -box; x <= box; ++x) out.insert({x, y});
        continue;
      }
      if (c % b == 0) {
        const i128 x = -c / b;
        if (-box <= x && x <= box) out.insert({static_cast<i64>(x), y});
      }
      continue;
    }
    const i128 disc = b * b - 4 * static_cast<i128>(A) * c;
    i128 s = 0;
    if (!isqrt128(disc, s)) continue;
    for (const i128 root : {-b + s, -b - s}) {
      if (root % (2 * static_cast<i128>(A)) != 0) continue;
      const i128 x = root / (2 * static_cast<i128>(A));
      if (-box <= x && x <= box) out.insert({static_cast<i64>(x), y});
      if (s == 0) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TEST_CASE("unit hyperbola x^2 - 2y^2 = 1 in a box") {
  const auto inst = make_conic(1, 0, -2, 0, 0, -1, 100);
  CHECK(inst.delta == 8);
  const PairSet sols = solve_conic_in_box(inst);
  CHECK(sols.size() == 14);  // (+-1,0) (+-3,+-2) (+-17,+-12) (+-99,+-70)
  CHECK(count_conic_solutions(inst) == 12);
  CHECK(sols == conic_oracle(1, 0, -2, 0, 0, -1, 100));
  CHECK(sols == solve_conic_brute(inst));
}

TEST_CASE("circle x^2 + y^2 = 2") {
  const auto inst = make_conic(1, 0, 1, 0, 0, -2, 10);
  const PairSet sols = solve_conic_in_box(inst);
  PairSet want;
  for (i64 sx : {1, -1})
    for (i64 sy : {1, -1}) want.insert({sx, sy});
  CHECK(sols == want);
}

TEST_CASE("degenerate discriminants are rejected by the pell route") {
  CHECK_THROWS_AS(solve_conic_in_box(make_conic(1, 0, -4, 0, 0, -1, 10)), DegenerateConicError);
  CHECK_THROWS_AS(solve_conic_in_box(make_conic(1, 2, 1, 0, 0, -4, 10)), DegenerateConicError);
  // ... but the brute enumerator still handles them
  const PairSet sols = solve_conic_brute(make_conic(1, 0, -4, 0, 0, -1, 10));
  CHECK(sols == conic_oracle(1, 0, -4, 0, 0, -1, 10));
}

TEST_CASE("brute enumerator equals the independent oracle") {
  SplitMix64 rng(777);
  for (int i = 0; i < 150; ++i) {
    const i64 A = rng.range(-8, 8), B = rng.range(-8, 8), C = rng.range(-8, 8);
    const i64 D = rng.range(-8, 8), E = rng.range(-8, 8), F = rng.range(-8, 8);
    if (A == 0 && B == 0 && C == 0) continue;
    const i64 box = rng.range(1, 60);
    CHECK(solve_conic_brute(make_conic(A, B, C, D, E, F, box)) ==
          conic_oracle(A, B, C, D, E, F, box));
  }
}

TEST_CASE("pell route equals brute on random nondegenerate conics") {
  SplitMix64 rng(20202);
  int checked = 0, nonempty = 0;
  while (checked < 200) {
    const i64 A = rng.range(-12, 12), B = rng.range(-12, 12), C = rng.range(-12, 12);
    const i64 D = rng.range(-12, 12), E = rng.range(-12, 12), F = rng.range(-12, 12);
    const i64 box = 300;
    ConicInstance inst;
    try {
      inst = make_conic(A, B, C, D, E, F, box);
    } catch (const DomainError&) {
      continue;
    }
    PairSet got;
    try {
      got = solve_conic_in_box(inst);
    } catch (const DegenerateConicError&) {
      continue;
    }
    ++checked;
    const PairSet want = solve_conic_brute(inst);
    CHECK(got == want);
    if (!want.empty()) ++nonempty;
    const auto items = got.items();
    for (const auto& s : items) {
      const i128 x = s[0], y = s[1];
      CHECK(A * x * x + B * x * y + C * y * y + D * x + E * y + F == 0);
    }
  }
  CHECK(nonempty >= 20);
}

TEST_CASE("positive filter drops exactly the axis solutions") {
  const auto inst = make_conic(1, 0, -2, 0, 0, -1, 100);
  const PairSet all = solve_conic_in_box(inst);
  const PairSet pos = solve_conic_in_box(inst, true);
  PairSet want;
  const auto items = all.items();
  for (const auto& s : items)
    if (s[0] != 0 && s[1] != 0) want.insert(s);
  CHECK(pos == want);
}
