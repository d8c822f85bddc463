#include "hypell/productset.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <unordered_map>
#include <unordered_set>

namespace hypell::productset {

namespace {

void validate(const IntervalFp& iv) {
  if (iv.p < 3 || iv.p % 2 == 0 || !arith::is_prime(static_cast<u64>(iv.p)))
    throw DomainError("productset: p must be an odd prime");
  if (iv.length < 1 || iv.length >= iv.p) throw DomainError("productset: need 1 <= length < p");
  if (iv.start < 1 || iv.start + iv.length - 1 > iv.p - 1)
    throw DomainError("productset: interval must sit inside [1, p-1]");
}

u64 checked_budget(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3, u64 budget) {
  validate(i1);
  validate(i2);
  validate(i3);
  if (i1.p != i2.p || i1.p != i3.p) throw DomainError("productset: intervals must share p");
  const u128 work = static_cast<u128>(i1.length) * i2.length * i3.length;
  if (work > budget)
    throw BudgetError("productset: |I1||I2||I3| exceeds the enumeration budget; sample instead");
  return static_cast<u64>(work);
}

constexpr i64 BITMAP_P_CAP = static_cast<i64>(1) << 26;

}  // namespace

IntervalFp make_interval_fp(i64 p, i64 start, i64 length) {
  IntervalFp iv{p, start, length};
  validate(iv);
  return iv;
}

ProductSetResult product_set_3(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3,
                               u64 budget, bool want_set) {
  checked_budget(i1, i2, i3, budget);
  const u64 p = static_cast<u64>(i1.p);

  ProductSetResult out;
  auto record_all = [&](auto&& mark) {
    for (i64 x = i1.start; x < i1.start + i1.length; ++x)
      for (i64 y = i2.start; y < i2.start + i2.length; ++y) {
        const u64 xy = mulmod_u64(static_cast<u64>(x), static_cast<u64>(y), p);
        for (i64 z = i3.start; z < i3.start + i3.length; ++z)
          mark(mulmod_u64(xy, static_cast<u64>(z), p));
      }
  };

  if (i1.p <= BITMAP_P_CAP) {
    std::vector<bool> seen(p, false);
    record_all([&](u64 c) { seen[c] = true; });
    std::vector<i64> vals;
    for (u64 c = 1; c < p; ++c)
      if (seen[c]) vals.push_back(static_cast<i64>(c));
    out.cardinality = static_cast<i64>(vals.size());
    if (want_set) out.values = std::move(vals);
  } else {
    std::unordered_set<u64> seen;
    record_all([&](u64 c) { seen.insert(c); });
    out.cardinality = static_cast<i64>(seen.size());
    if (want_set) {
      std::vector<i64> vals(seen.begin(), seen.end());
      std::sort(vals.begin(), vals.end());
      out.values = std::move(vals);
    }
  }
  return out;
}

i64 count_W_direct(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3, u64 budget) {
  checked_budget(i1, i2, i3, budget);
  const u64 p = static_cast<u64>(i1.p);

  auto tally_all = [&](auto&& bump) {
    for (i64 x = i1.start; x < i1.start + i1.length; ++x)
      for (i64 y = i2.start; y < i2.start + i2.length; ++y) {
        const u64 xy = mulmod_u64(static_cast<u64>(x), static_cast<u64>(y), p);
        for (i64 z = i3.start; z < i3.start + i3.length; ++z)
          bump(mulmod_u64(xy, static_cast<u64>(z), p));
      }
  };

  i64 W = 0;
  if (i1.p <= BITMAP_P_CAP) {
    std::vector<i64> mult(p, 0);
    tally_all([&](u64 c) { ++mult[c]; });
    for (u64 c = 1; c < p; ++c) W += mult[c] * mult[c];
  } else {
    std::unordered_map<u64, i64> mult;
    tally_all([&](u64 c) { ++mult[c]; });
    for (const auto& [c, m] : mult) W += m * m;
  }
  return W;
}

CharacterTable make_character_table(i64 p) {
  if (p < 3 || p % 2 == 0 || !arith::is_prime(static_cast<u64>(p)))
    throw DomainError("make_character_table: p must be an odd prime");
  if (p > CHARACTER_P_CAP)
    throw DomainError("make_character_table: p exceeds the table policy bound 4096");

  const auto pf = arith::factorize(p - 1).factors;
  i64 g = 0;
  for (i64 cand = 2; cand < p; ++cand) {
    bool primitive = true;
    for (const auto& [q, e] : pf)
      if (powmod_u64(static_cast<u64>(cand), static_cast<u64>((p - 1) / static_cast<i64>(q)),
                     static_cast<u64>(p)) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw Error("make_character_table: no primitive root found (impossible for prime p)");

  CharacterTable tbl;
  tbl.p = p;
  tbl.generator = g;
  tbl.index.assign(static_cast<std::size_t>(p), -1);
  u64 pow = 1;
  for (i64 j = 0; j < p - 1; ++j) {
    tbl.index[static_cast<std::size_t>(pow)] = static_cast<i32>(j);
    pow = mulmod_u64(pow, static_cast<u64>(g), static_cast<u64>(p));
  }
  return tbl;
}

i64 count_W_characters(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3,
                       const CharacterTable& tbl) {
  validate(i1);
  validate(i2);
  validate(i3);
  if (i1.p != i2.p || i1.p != i3.p || i1.p != tbl.p)
    throw DomainError("count_W_characters: intervals and table must share p");

  const i64 n = tbl.p - 1;  // character group order
  std::vector<long double> cosr(static_cast<std::size_t>(n)), sinr(static_cast<std::size_t>(n));
  const long double tau = 2.0L * 3.14159265358979323846264338327950288L;
  for (i64 r = 0; r < n; ++r) {
    cosr[static_cast<std::size_t>(r)] = std::cos(tau * r / n);
    sinr[static_cast<std::size_t>(r)] = std::sin(tau * r / n);
  }

  std::vector<i32> idx1, idx2, idx3;
  auto indices_of = [&](const IntervalFp& iv, std::vector<i32>& idx) {
    idx.reserve(static_cast<std::size_t>(iv.length));
    for (i64 x = iv.start; x < iv.start + iv.length; ++x)
      idx.push_back(tbl.index[static_cast<std::size_t>(x)]);
  };
  indices_of(i1, idx1);
  indices_of(i2, idx2);
  indices_of(i3, idx3);

  auto norm2 = [&](const std::vector<i32>& idx, i64 m) {
    long double re = 0, im = 0;
    for (i32 j : idx) {
      const i64 r = (static_cast<i64>(j) * m) % n;
      re += cosr[static_cast<std::size_t>(r)];
      im += sinr[static_cast<std::size_t>(r)];
    }
    return re * re + im * im;
  };

  long double sum = 0, comp = 0;  // Kahan
  for (i64 m = 0; m < n; ++m) {
    const long double term = norm2(idx1, m) * norm2(idx2, m) * norm2(idx3, m);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const long double W = sum / n;
  const long double rounded = std::round(W);
  if (std::fabs(W - rounded) > 1e-6L)
    throw Error("count_W_characters: character sum failed the integrality check");
  return static_cast<i64>(rounded);
}

ProductBoundReport product_lower_bound_report(const IntervalFp& i1, const IntervalFp& i2,
                                              const IntervalFp& i3, u64 budget) {
  ProductBoundReport rep;
  rep.cardinality = product_set_3(i1, i2, i3, budget).cardinality;
  rep.W = count_W_direct(i1, i2, i3, budget);
  const i128 sizes_sq = static_cast<i128>(i1.length) * i2.length * i3.length *
                        i1.length * i2.length * i3.length;
  rep.ratio = arith::make_rational(sizes_sq, rep.W);
  if (static_cast<i128>(rep.cardinality) * rep.W < sizes_sq)
    throw Error("product_lower_bound_report: Cauchy-Schwarz bound violated (impossible)");
  return rep;
}

}  // namespace hypell::productset
