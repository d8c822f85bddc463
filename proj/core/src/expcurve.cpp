#include "hypell/expcurve.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace hypell::expcurve {

namespace {

constexpr i64 COORD_CAP = static_cast<i64>(1) << 60;

void validate(const ExpCurveInstance& inst) {
  if (inst.p < 3 || inst.p > COORD_CAP || inst.p % 2 == 0 || !arith::is_prime(static_cast<u64>(inst.p)))
    throw DomainError("expcurve: p must be an odd prime below 2^60");
  if (inst.g < 2 || floor_mod(inst.g, inst.p) == 0)
    throw DomainError("expcurve: g must be >= 2 and invertible mod p");
  if (floor_mod(inst.a, inst.p) == 0) throw DomainError("expcurve: a must be nonzero mod p");
  if (inst.t < 1 || powmod_u64(static_cast<u64>(floor_mod(inst.g, inst.p)), static_cast<u64>(inst.t),
                               static_cast<u64>(inst.p)) != 1)
    throw DomainError("expcurve: t is not an exponent of g");
  if (inst.M < 1 || inst.M > inst.t) throw DomainError("expcurve: M must satisfy 1 <= M <= ord(g)");
  if (inst.K < -COORD_CAP || inst.K > COORD_CAP || inst.L < -COORD_CAP || inst.L > COORD_CAP)
    throw DomainError("expcurve: |K|, |L| must be <= 2^60");
}

}  // namespace

i64 multiplicative_order(i64 g, i64 p) {
  if (p < 2 || !arith::is_prime(static_cast<u64>(p)))
    throw DomainError("multiplicative_order: p must be prime");
  const u64 up = static_cast<u64>(p);
  const u64 gr = static_cast<u64>(floor_mod(g, p));
  if (gr == 0) throw DomainError("multiplicative_order: gcd(g, p) != 1");
  i64 t = p - 1;
  for (const auto& [q, e] : arith::factorize(p - 1).factors) {
    const i64 qi = static_cast<i64>(q);
    for (int i = 0; i < e && t % qi == 0 && powmod_u64(gr, static_cast<u64>(t / qi), up) == 1; ++i)
      t /= qi;
  }
  return t;
}

ExpCurveInstance make_expcurve(i64 p, i64 g, i64 a, i64 K, i64 L, i64 M) {
  ExpCurveInstance inst{p, g, 0, a, K, L, M};
  inst.t = 1;  // placeholder so validate can run after the order is known
  if (p < 3 || p > COORD_CAP || p % 2 == 0 || !arith::is_prime(static_cast<u64>(p)))
    throw DomainError("expcurve: p must be an odd prime below 2^60");
  if (g < 2 || floor_mod(g, p) == 0) throw DomainError("expcurve: g must be >= 2 and invertible mod p");
  inst.t = multiplicative_order(g, p);
  inst.a = floor_mod(a, p);
  validate(inst);
  return inst;
}

ExpCurveResult count_expcurve(const ExpCurveInstance& inst) {
  validate(inst);
  const i64 p = inst.p, K = inst.K, L = inst.L, M = inst.M;
  const u64 up = static_cast<u64>(p);
  const u64 gr = static_cast<u64>(floor_mod(inst.g, p));
  const u64 ar = static_cast<u64>(floor_mod(inst.a, p));

  u64 y = mulmod_u64(ar, powmod_u64(gr, static_cast<u64>(floor_mod(K + 1, inst.t)), up), up);

  ExpCurveResult out;
  std::vector<u64> seen;
  seen.reserve(static_cast<std::size_t>(M));
  for (i64 i = 1; i <= M; ++i) {
    seen.push_back(y);
    const i64 y_abs = L + 1 + floor_mod(static_cast<i64>(y) - L - 1, p);
    if (y_abs <= L + M) out.solutions.insert({K + i, y_abs});
    y = mulmod_u64(y, gr, up);
  }

  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw Error("count_expcurve: y-values collided although M <= ord(g)");

  out.solutions.canonicalize();
  out.count = static_cast<i64>(out.solutions.size());
  return out;
}

PairStat pigeonhole_pair_stat(const ExpCurveInstance& inst) {
  const ExpCurveResult points = count_expcurve(inst);
  PairStat stat;
  if (points.count == 0) return stat;

  const u64 up = static_cast<u64>(inst.p);
  std::vector<u64> ys;
  ys.reserve(static_cast<std::size_t>(points.count));
  for (const auto& s : points.solutions.items())
    ys.push_back(static_cast<u64>(floor_mod(s[1], inst.p)));

  std::unordered_map<u64, i64> tally;
  tally.reserve(ys.size() * ys.size());
  for (u64 yi : ys)
    for (u64 yj : ys) ++tally[mulmod_u64(yi, yj, up)];

  for (const auto& [lam, cnt] : tally)
    if (cnt > stat.pair_count ||
        (cnt == stat.pair_count && static_cast<i64>(lam) < stat.lambda_star))
      stat = PairStat{static_cast<i64>(lam), cnt};

  const i64 k = points.count;
  if (ceil_div128(static_cast<i128>(k) * k, 2 * inst.M) > stat.pair_count)
    throw Error("pigeonhole_pair_stat: multiplicity fell below k^2/(2M) (impossible)");
  return stat;
}

}  // namespace hypell::expcurve
