#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <unordered_map>
#include <vector>

#include "hypell/arith.hpp"
#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/productset.hpp"

using namespace hypell;
using namespace hypell::productset;
using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// oracle: independent triple-loop tally of products and their multiplicities

struct TallyOracle {
  std::set<i64> values;
  std::unordered_map<i64, i64> mult;
};

static TallyOracle tally_oracle(const IntervalFp& i1, const IntervalFp& i2,
                                const IntervalFp& i3) {
  TallyOracle out;
  const u64 p = static_cast<u64>(i1.p);
  for (i64 x = i1.start; x < i1.start + i1.length; ++x)
    for (i64 y = i2.start; y < i2.start + i2.length; ++y) {
      const u64 xy = mulmod_u64(static_cast<u64>(x), static_cast<u64>(y), p);
      for (i64 z = i3.start; z < i3.start + i3.length; ++z) {
        const i64 v = static_cast<i64>(mulmod_u64(xy, static_cast<u64>(z), p));
        out.values.insert(v);
        ++out.mult[v];
      }
    }
  return out;
}

static i64 W_oracle(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3) {
  i64 w = 0;
  for (const auto& [v, m] : tally_oracle(i1, i2, i3).mult) w += m * m;
  return w;
}

static IntervalFp iv(i64 p, i64 s, i64 l) { return make_interval_fp(p, s, l); }

// ---------------------------------------------------------------------------

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(make_interval_fp(8, 1, 2), DomainError);   // composite p
  CHECK_THROWS_AS(make_interval_fp(7, 0, 2), DomainError);   // hits 0
  CHECK_THROWS_AS(make_interval_fp(7, 6, 2), DomainError);   // spills past p-1
  CHECK_THROWS_AS(make_interval_fp(7, 1, 0), DomainError);   // empty
  CHECK_NOTHROW(make_interval_fp(7, 1, 6));
}

TEST_CASE("worked p=7 example: {1,2}^3") {
  const auto I = iv(7, 1, 2);
  const auto ps = product_set_3(I, I, I, DEFAULT_BUDGET, true);
  CHECK(ps.cardinality == 3);
  REQUIRE(ps.values.has_value());
  CHECK(*ps.values == std::vector<i64>{1, 2, 4});
  CHECK(count_W_direct(I, I, I) == 22);

  const auto rep = product_lower_bound_report(I, I, I);
  CHECK(rep.cardinality == 3);
  CHECK(rep.W == 22);
  CHECK(rep.ratio.num == 32);  // 64/22 reduced
  CHECK(rep.ratio.den == 11);
}

TEST_CASE("full intervals multiply out to the whole group") {
  const auto I = iv(11, 1, 10);
  const auto ps = product_set_3(I, I, I, DEFAULT_BUDGET, true);
  CHECK(ps.cardinality == 10);
  CHECK(count_W_direct(I, I, I) == 100000);  // 10^6 tuples / 10 classes, squared sum
}

TEST_CASE("cardinality and W match the tally oracle on random intervals") {
  SplitMix64 rng(555);
  const i64 primes[] = {7, 11, 13, 101, 997};
  for (int i = 0; i < 80; ++i) {
    const i64 p = primes[rng.range(0, 4)];
    const i64 cap = std::min<i64>(p - 1, 9);
    const i64 l1 = rng.range(1, cap), l2 = rng.range(1, cap), l3 = rng.range(1, cap);
    const auto a = iv(p, rng.range(1, p - l1), l1);
    const auto b = iv(p, rng.range(1, p - l2), l2);
    const auto c = iv(p, rng.range(1, p - l3), l3);
    const auto want = tally_oracle(a, b, c);
    const auto ps = product_set_3(a, b, c, DEFAULT_BUDGET, true);
    CHECK(ps.cardinality == static_cast<i64>(want.values.size()));
    CHECK(std::vector<i64>(want.values.begin(), want.values.end()) == *ps.values);
    CHECK(count_W_direct(a, b, c) == W_oracle(a, b, c));
  }
}

TEST_CASE("character-sum evaluation equals the direct count") {
  SplitMix64 rng(565);
  for (const i64 p : {7LL, 11LL, 13LL, 101LL, 997LL}) {
    const auto tbl = make_character_table(p);
    CHECK(tbl.p == p);
    // table sanity: index is a bijection on [1, p-1]
    std::vector<bool> seen(static_cast<std::size_t>(p - 1), false);
    for (i64 v = 1; v < p; ++v) {
      const i32 ix = tbl.index[static_cast<std::size_t>(v)];
      REQUIRE(ix >= 0);
      REQUIRE(ix < p - 1);
      CHECK_FALSE(seen[static_cast<std::size_t>(ix)]);
      seen[static_cast<std::size_t>(ix)] = true;
    }
    for (int i = 0; i < 12; ++i) {
      const i64 cap = std::min<i64>(p - 1, 10);
      const i64 l1 = rng.range(1, cap), l2 = rng.range(1, cap), l3 = rng.range(1, cap);
      const auto a = iv(p, rng.range(1, p - l1), l1);
      const auto b = iv(p, rng.range(1, p - l2), l2);
      const auto c = iv(p, rng.range(1, p - l3), l3);
      CHECK(count_W_characters(a, b, c, tbl) == count_W_direct(a, b, c));
    }
  }
  CHECK_THROWS_AS(make_character_table(4099), DomainError);  // above the table cap
}

TEST_CASE("W is symmetric and at least the tuple count") {
  SplitMix64 rng(575);
  for (int i = 0; i < 40; ++i) {
    const i64 p = 101;
    const i64 l1 = rng.range(1, 8), l2 = rng.range(1, 8), l3 = rng.range(1, 8);
    const auto a = iv(p, rng.range(1, p - l1), l1);
    const auto b = iv(p, rng.range(1, p - l2), l2);
    const auto c = iv(p, rng.range(1, p - l3), l3);
    const i64 w = count_W_direct(a, b, c);
    CHECK(w == count_W_direct(b, a, c));
    CHECK(w == count_W_direct(c, b, a));
    CHECK(w >= l1 * l2 * l3);
  }
}

TEST_CASE("Holder: W(a,b,c)^3 <= W(a,a,a) W(b,b,b) W(c,c,c)") {
  SplitMix64 rng(585);
  for (int i = 0; i < 25; ++i) {
    const i64 p = 997;
    const i64 l1 = rng.range(1, 9), l2 = rng.range(1, 9), l3 = rng.range(1, 9);
    const auto a = iv(p, rng.range(1, p - l1), l1);
    const auto b = iv(p, rng.range(1, p - l2), l2);
    const auto c = iv(p, rng.range(1, p - l3), l3);
    const cpp_int w = count_W_direct(a, b, c);
    const cpp_int wa = count_W_direct(a, a, a);
    const cpp_int wb = count_W_direct(b, b, b);
    const cpp_int wc = count_W_direct(c, c, c);
    CHECK(w * w * w <= wa * wb * wc);
  }
}

TEST_CASE("lower-bound report holds exactly on random instances") {
  SplitMix64 rng(595);
  for (int i = 0; i < 60; ++i) {
    const i64 p = (i % 2 == 0) ? 997 : 3001;
    const i64 l1 = rng.range(1, 10), l2 = rng.range(1, 10), l3 = rng.range(1, 10);
    const auto a = iv(p, rng.range(1, p - l1), l1);
    const auto b = iv(p, rng.range(1, p - l2), l2);
    const auto c = iv(p, rng.range(1, p - l3), l3);
    const auto rep = product_lower_bound_report(a, b, c);
    const i128 sizes_sq = static_cast<i128>(l1) * l2 * l3 * l1 * l2 * l3;
    CHECK(static_cast<i128>(rep.cardinality) * rep.W >= sizes_sq);
  }
}

TEST_CASE("budget refusal names the way out") {
  const auto I = iv(99991, 1, 99990);
  try {
    product_set_3(I, I, I, 1000);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("sample") != std::string::npos);
  }
}
