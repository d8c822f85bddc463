#include "hypell/hyperbola3.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <vector>

namespace hypell::hyperbola3 {

namespace {

using bigint = boost::multiprecision::cpp_int;

constexpr i64 COORD_CAP = static_cast<i64>(1) << 60;

void validate(const HyperbolaInstance3& inst) {
  if (inst.p < 3 || inst.p > COORD_CAP || inst.p % 2 == 0 || !arith::is_prime(static_cast<u64>(inst.p)))
    throw DomainError("hyperbola3: p must be an odd prime below 2^60");
  if (floor_mod(inst.lambda, inst.p) == 0)
    throw DomainError("hyperbola3: lambda must be nonzero mod p");
  if (inst.M < 1 || inst.M > inst.p)
    throw DomainError("hyperbola3: M must satisfy 1 <= M <= p");
  if (inst.L < -COORD_CAP || inst.L > COORD_CAP)
    throw DomainError("hyperbola3: |L| must be <= 2^60");
}

// k = 1 exactly when 2M^2 <= p^(1/4), i.e. 16 M^8 <= p
bool unit_k(i64 p, i64 M) {
  return static_cast<u128>(M) <= ikth_root(static_cast<u128>(p / 16), 8);
}

}  // namespace

HyperbolaInstance3 make_instance_3(i64 p, i64 lambda, i64 L, i64 M) {
  HyperbolaInstance3 inst{p, lambda, L, M};
  validate(inst);
  inst.lambda = floor_mod(lambda, p);
  return inst;
}

CountResult3 count_brute_3(const HyperbolaInstance3& inst) {
  validate(inst);
  const i64 p = inst.p, M = inst.M, L = inst.L;
  const u64 up = static_cast<u64>(p);
  const u64 lam = static_cast<u64>(floor_mod(inst.lambda, p));

  std::vector<u64> a(static_cast<std::size_t>(M) + 1, 0);
  for (i64 x = 1; x <= M; ++x) a[static_cast<std::size_t>(x)] = static_cast<u64>(floor_mod(L + x, p));

  // one modular inversion for the whole row of residues
  std::vector<u64> inv(static_cast<std::size_t>(M) + 1, 0), pre;
  pre.reserve(static_cast<std::size_t>(M) + 1);
  pre.push_back(1);
  std::vector<std::size_t> idx;
  for (i64 x = 1; x <= M; ++x)
    if (a[static_cast<std::size_t>(x)] != 0) {
      idx.push_back(static_cast<std::size_t>(x));
      pre.push_back(mulmod_u64(pre.back(), a[static_cast<std::size_t>(x)], up));
    }
  if (!idx.empty()) {
    u64 suffix = static_cast<u64>(inv_mod(static_cast<i64>(pre.back()), p));
    for (std::size_t i = idx.size(); i-- > 0;) {
      inv[idx[i]] = mulmod_u64(suffix, pre[i], up);
      suffix = mulmod_u64(suffix, a[idx[i]], up);
    }
  }

  CountResult3 out;
  for (i64 x = 1; x <= M; ++x) {
    if (a[static_cast<std::size_t>(x)] == 0) continue;
    const u64 lx = mulmod_u64(lam, inv[static_cast<std::size_t>(x)], up);
    for (i64 y = 1; y <= M; ++y) {
      if (a[static_cast<std::size_t>(y)] == 0) continue;
      const i64 z_res = static_cast<i64>(mulmod_u64(lx, inv[static_cast<std::size_t>(y)], up));
      const i64 zs = 1 + floor_mod(z_res - L - 1, p);
      if (zs <= M) out.solutions.insert({x, y, zs});
    }
  }
  out.solutions.canonicalize();
  out.count = static_cast<i64>(out.solutions.size());
  return out;
}

std::optional<TripleFastContext> try_fast_context(const HyperbolaInstance3& inst) {
  validate(inst);
  const i64 p = inst.p, M = inst.M;
  const i64 Lr = floor_mod(inst.L, p);

  i64 U, V;
  if (unit_k(p, M)) {
    U = M * M * M;  // M <= (p/16)^(1/8) < 2^8, no overflow
    V = M * M;
  } else {
    V = static_cast<i64>(ikth_root(static_cast<u128>(p), 4)) / 2;
    if (V < 1) return std::nullopt;
    bigint x4 = bigint(M) * M;
    x4 = x4 * x4 * p;
    bigint n = sqrt(sqrt(x4)) / 2;  // floor(M * p^(1/4) / 2)
    if (n > p) n = p;               // remainder rows never exceed p, so this loses nothing
    U = n.convert_to<i64>();
  }

  auto uv = arith::rational_reconstruct(Lr, p, U, V);
  if (!uv) return std::nullopt;
  auto [u, v] = *uv;
  if (v < 0) {
    u = -u;
    v = -v;
  }
  // u^3 must stay representable alongside v*mu; such u only arise at sizes
  // where the product form is inapplicable anyway
  if (u > (static_cast<i64>(1) << 41) || u < -(static_cast<i64>(1) << 41)) return std::nullopt;

  const u64 up = static_cast<u64>(p);
  const u64 lam = static_cast<u64>(floor_mod(inst.lambda, p));
  const u64 vr = static_cast<u64>(floor_mod(v, p));
  const u64 v2 = mulmod_u64(vr, vr, up);
  const u64 uLr = static_cast<u64>(Lr);
  const u64 L3 = mulmod_u64(mulmod_u64(uLr, uLr, up), uLr, up);
  const u64 diff = static_cast<u64>(floor_mod(static_cast<i64>(lam) - static_cast<i64>(L3), p));

  TripleFastContext ctx;
  ctx.inst = inst;
  ctx.inst.lambda = static_cast<i64>(lam);
  ctx.u = u;
  ctx.v = v;
  ctx.mu = arith::centered(static_cast<i64>(mulmod_u64(v2, diff, up)), p);
  ctx.c = static_cast<i128>(v) * ctx.mu.value + static_cast<i128>(u) * u * u;
  if (ctx.c == 0) throw Error("try_fast_context: c = v*mu + u^3 vanished (impossible for prime p)");
  return ctx;
}

bool product_form_applicable(i64 p, i64 M) {
  if (unit_k(p, M))
    return static_cast<u128>(M) <= ikth_root(static_cast<u128>((p - 1) / 14), 7);  // 14 M^7 < p
  return static_cast<u128>(M) <=
         ikth_root((static_cast<u128>(4) * static_cast<u128>(p) - 1) / 49, 6);  // 49 M^6 < 4p
}

TripleSet solve_product_form(const TripleFastContext& ctx) {
  validate(ctx.inst);
  const i64 p = ctx.inst.p, M = ctx.inst.M, u = ctx.u, v = ctx.v;
  if (v < 1) throw DomainError("solve_product_form: v must be positive");
  if (!product_form_applicable(p, M))
    throw FastPathError("solve_product_form: size condition fails (cross terms can wrap mod p)");

  arith::Factorization f;
  try {
    f = arith::factorize(ctx.c);
  } catch (const FactorError&) {
    throw FactorError("solve_product_form: factorization work bound exceeded at c = " +
                      to_string_i128(ctx.c));
  }

  const i128 lo = static_cast<i128>(v) + u;  // d = v*x + u, x in [1, M]
  const i128 hi = static_cast<i128>(v) * M + u;

  std::vector<i128> cand;
  if (hi >= 1)
    for (i128 d : arith::divisors_in_interval(f, lo < 1 ? 1 : lo, hi)) cand.push_back(d);
  if (lo <= -1) {
    const i128 e_lo = hi >= -1 ? 1 : -hi;
    for (i128 e : arith::divisors_in_interval(f, e_lo, -lo)) cand.push_back(-e);
  }

  auto coord_of = [&](i128 d) -> i64 {
    if ((d - u) % v != 0) return 0;
    const i128 w = (d - u) / v;
    return (w >= 1 && w <= M) ? static_cast<i64>(w) : 0;
  };

  TripleSet out;
  for (i128 d1 : cand) {
    const i64 x = coord_of(d1);
    if (x == 0) continue;
    const i128 c1 = ctx.c / d1;
    for (i128 d2 : cand) {
      if (c1 % d2 != 0) continue;
      const i64 y = coord_of(d2);
      if (y == 0) continue;
      const i64 z = coord_of(c1 / d2);
      if (z == 0) continue;
      out.insert({x, y, z});
    }
  }
  out.canonicalize();

  const u64 up = static_cast<u64>(p);
  const u64 lam = static_cast<u64>(floor_mod(ctx.inst.lambda, p));
  for (const auto& s : out.items()) {
    const i128 prod = (static_cast<i128>(v) * s[0] + u) * (static_cast<i128>(v) * s[1] + u) *
                      (static_cast<i128>(v) * s[2] + u);
    const u64 m1 = static_cast<u64>(floor_mod(ctx.inst.L + s[0], p));
    const u64 m2 = static_cast<u64>(floor_mod(ctx.inst.L + s[1], p));
    const u64 m3 = static_cast<u64>(floor_mod(ctx.inst.L + s[2], p));
    if (prod != ctx.c || mulmod_u64(mulmod_u64(m1, m2, up), m3, up) != lam)
      throw Error("solve_product_form: internal verification failed");
  }
  return out;
}

Count3Result count_3(const HyperbolaInstance3& inst) {
  validate(inst);
  if (product_form_applicable(inst.p, inst.M)) {
    if (auto ctx = try_fast_context(inst)) {
      Count3Result res;
      res.count = static_cast<i64>(solve_product_form(*ctx).size());
      res.method = "fast";
      return res;
    }
  }
  Count3Result res;
  res.count = count_brute_3(inst).count;
  res.method = "brute";
  return res;
}

}  // namespace hypell::hyperbola3
