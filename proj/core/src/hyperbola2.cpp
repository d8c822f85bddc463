#include "hypell/hyperbola2.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hypell::hyperbola2 {

namespace {

constexpr i64 COORD_CAP = static_cast<i64>(1) << 60;

void validate(const HyperbolaInstance2& inst) {
  if (inst.p < 3 || inst.p > COORD_CAP || inst.p % 2 == 0 || !arith::is_prime(static_cast<u64>(inst.p)))
    throw DomainError("hyperbola2: p must be an odd prime below 2^60");
  if (floor_mod(inst.lambda, inst.p) == 0)
    throw DomainError("hyperbola2: lambda must be nonzero mod p");
  if (inst.M < 1 || inst.M > inst.p)
    throw DomainError("hyperbola2: M must satisfy 1 <= M <= p");
  if (inst.K < -COORD_CAP || inst.K > COORD_CAP || inst.L < -COORD_CAP || inst.L > COORD_CAP)
    throw DomainError("hyperbola2: |K|, |L| must be <= 2^60");
}

// unique lift of residue r into (base, base+p]; in-box iff <= base+M
i64 lift_above(i64 r, i64 base, i64 p) { return base + 1 + floor_mod(r - base - 1, p); }

}  // namespace

HyperbolaInstance2 make_instance_2(i64 p, i64 lambda, i64 K, i64 L, i64 M) {
  HyperbolaInstance2 inst{p, lambda, K, L, M};
  validate(inst);
  inst.lambda = floor_mod(lambda, p);
  return inst;
}

CountResult2 count_brute_2(const HyperbolaInstance2& inst) {
  validate(inst);
  const i64 p = inst.p, M = inst.M, K = inst.K, L = inst.L;
  const u64 lam = static_cast<u64>(floor_mod(inst.lambda, p));
  const u64 up = static_cast<u64>(p);

  CountResult2 out;
  constexpr i64 BLOCK = 1 << 16;
  std::vector<u64> rs, pre;
  std::vector<i64> xs;
  rs.reserve(BLOCK);
  xs.reserve(BLOCK);
  pre.reserve(BLOCK + 1);

  for (i64 lo = 1; lo <= M; lo += BLOCK) {
    const i64 hi = std::min(M, lo + BLOCK - 1);
    rs.clear();
    xs.clear();
    for (i64 i = lo; i <= hi; ++i) {
      const i64 x = K + i;
      const u64 r = static_cast<u64>(floor_mod(x, p));
      if (r == 0) continue;
      rs.push_back(r);
      xs.push_back(x);
    }
    if (rs.empty()) continue;

    pre.assign(1, 1);
    for (u64 r : rs) pre.push_back(mulmod_u64(pre.back(), r, up));
    u64 inv_suffix = static_cast<u64>(inv_mod(static_cast<i64>(pre.back()), p));
    for (std::size_t i = rs.size(); i-- > 0;) {
      const u64 inv_r = mulmod_u64(inv_suffix, pre[i], up);
      inv_suffix = mulmod_u64(inv_suffix, rs[i], up);
      const i64 y_res = static_cast<i64>(mulmod_u64(lam, inv_r, up));
      const i64 y = lift_above(y_res, L, p);
      if (y <= L + M) out.solutions.insert({xs[i], y});
    }
  }
  out.solutions.canonicalize();
  out.count = static_cast<i64>(out.solutions.size());
  return out;
}

PigeonholeTriple find_pigeonhole_triple(i64 p, i64 K, i64 L, i64 T) {
  if (p < 3 || p % 2 == 0) throw DomainError("find_pigeonhole_triple: p must be odd and >= 3");
  if (T < 1 || T >= p) throw DomainError("find_pigeonhole_triple: need 1 <= T < p");
  const u64 up = static_cast<u64>(p);
  const u64 Kr = static_cast<u64>(floor_mod(K, p));
  const u64 Lr = static_cast<u64>(floor_mod(L, p));
  const bool diagonal = (Kr == Lr);
  const i64 t_limit = diagonal
                          ? T
                          : static_cast<i64>(std::min(static_cast<i128>(T) * T, static_cast<i128>(p - 1)));
  for (i64 t = 1; t <= t_limit; ++t) {
    const i64 u0 = arith::centered(static_cast<i64>(mulmod_u64(static_cast<u64>(t), Kr, up)), p).value;
    if (static_cast<i128>(T) * (u0 < 0 ? -u0 : u0) > p) continue;
    const i64 v0 = arith::centered(static_cast<i64>(mulmod_u64(static_cast<u64>(t), Lr, up)), p).value;
    if (static_cast<i128>(T) * (v0 < 0 ? -v0 : v0) > p) continue;
    return PigeonholeTriple{t, u0, v0, T};
  }
  throw Error("find_pigeonhole_triple: scan exhausted without a triple (should be impossible)");
}

ReducedEquation2 reduce_2(const HyperbolaInstance2& inst) {
  validate(inst);
  const i64 p = inst.p, M = inst.M;
  const u64 up = static_cast<u64>(p);

  // M < p^(1/4)/4 (i.e. 256 M^4 < p): one z suffices with T = 8M.
  // Otherwise T is the nearest integer to (p/M)^(1/3).
  i64 T;
  if (static_cast<u128>(M) <= ikth_root(static_cast<u128>((p - 1) / 256), 4)) {
    T = 8 * M;
  } else {
    const i64 r = static_cast<i64>(ikth_root(static_cast<u128>(p / M), 3));
    const i128 up_cube = static_cast<i128>(2 * r + 1) * (2 * r + 1) * (2 * r + 1);
    T = (up_cube * M <= static_cast<i128>(8) * p) ? r + 1 : r;
  }
  if (T < 1) T = 1;
  if (T >= p) T = p - 1;

  ReducedEquation2 red;
  red.triple = find_pigeonhole_triple(p, inst.K, inst.L, T);

  const u64 Kr = static_cast<u64>(floor_mod(inst.K, p));
  const u64 Lr = static_cast<u64>(floor_mod(inst.L, p));
  const u64 lam = static_cast<u64>(floor_mod(inst.lambda, p));
  const u64 b = static_cast<u64>(floor_mod(static_cast<i64>(lam) - static_cast<i64>(mulmod_u64(Kr, Lr, up)), p));
  red.b0 = arith::centered(static_cast<i64>(mulmod_u64(static_cast<u64>(red.triple.t), b, up)), p);

  const i128 num = static_cast<i128>(2) * T * T * T * M * M + static_cast<i128>(4) * M * p +
                   static_cast<i128>(p) * T;
  const i128 den = static_cast<i128>(2) * p * T;
  const i64 zb = static_cast<i64>((num - 1) / den);
  red.z_lo = -zb;
  red.z_hi = zb;
  return red;
}

FastResult2 enumerate_fast_2(const HyperbolaInstance2& inst) {
  validate(inst);
  const i64 p = inst.p, M = inst.M, K = inst.K, L = inst.L;
  const u64 up = static_cast<u64>(p);
  const u64 lam = static_cast<u64>(floor_mod(inst.lambda, p));

  const ReducedEquation2 red = reduce_2(inst);
  const i64 t = red.triple.t, u0 = red.triple.u0, v0 = red.triple.v0;

  FastResult2 out;
  out.z_width = red.z_hi - red.z_lo + 1;

  // keep per-z factorizations cheap; Pollard picks up where trial division stops
  arith::FactorizeLimits nz_limits;
  nz_limits.trial_bound = 2048;

  const i128 d_lo = static_cast<i128>(t) + u0;          // d = t*x' + u0, x' in [1, M]
  const i128 d_hi = static_cast<i128>(t) * M + u0;

  auto try_divisor = [&](i128 d, i128 n_z) {
    if ((d - u0) % t != 0) return;
    const i128 xs = (d - u0) / t;
    if (xs < 1 || xs > M) return;
    const i128 fy = n_z / d;
    if ((fy - v0) % t != 0) return;
    const i128 ys = (fy - v0) / t;
    if (ys < 1 || ys > M) return;
    out.solutions.insert({K + static_cast<i64>(xs), L + static_cast<i64>(ys)});
  };

  for (i64 z = red.z_lo; z <= red.z_hi; ++z) {
    const i128 n_z = reduced_nz(red, z);

    if (n_z == 0) {
      // one factor vanishes; the surviving coordinate comes from the original congruence
      if (u0 % t == 0) {
        const i64 xs = -(u0 / t);
        if (xs >= 1 && xs <= M) {
          const i64 x = K + xs;
          const u64 r = static_cast<u64>(floor_mod(x, p));
          if (r != 0) {
            const i64 y_res =
                static_cast<i64>(mulmod_u64(lam, static_cast<u64>(inv_mod(static_cast<i64>(r), p)), up));
            const i64 y = L + 1 + floor_mod(y_res - L - 1, p);
            if (y <= L + M) out.solutions.insert({x, y});
          }
        }
      }
      if (v0 % t == 0) {
        const i64 ys = -(v0 / t);
        if (ys >= 1 && ys <= M) {
          const i64 y = L + ys;
          const u64 r = static_cast<u64>(floor_mod(y, p));
          if (r != 0) {
            const i64 x_res =
                static_cast<i64>(mulmod_u64(lam, static_cast<u64>(inv_mod(static_cast<i64>(r), p)), up));
            const i64 x = K + 1 + floor_mod(x_res - K - 1, p);
            if (x <= K + M) out.solutions.insert({x, y});
          }
        }
      }
      continue;
    }

    arith::Factorization f;
    try {
      f = arith::factorize(n_z, nz_limits);
    } catch (const FactorError&) {
      throw FactorError("enumerate_fast_2: factorization work bound exceeded at n_z = " +
                        to_string_i128(n_z));
    }

    if (d_hi >= 1) {
      for (i128 d : arith::divisors_in_interval(f, d_lo < 1 ? 1 : d_lo, d_hi)) try_divisor(d, n_z);
    }
    if (d_lo <= -1) {
      const i128 e_lo = d_hi >= -1 ? 1 : -d_hi;
      for (i128 e : arith::divisors_in_interval(f, e_lo, -d_lo)) try_divisor(-e, n_z);
    }
  }

  out.solutions.canonicalize();
  for (const auto& s : out.solutions.items()) {
    const bool in_box = s[0] > K && s[0] <= K + M && s[1] > L && s[1] <= L + M;
    const u64 xr = static_cast<u64>(floor_mod(s[0], p));
    const u64 yr = static_cast<u64>(floor_mod(s[1], p));
    if (!in_box || mulmod_u64(xr, yr, up) != lam)
      throw Error("enumerate_fast_2: internal verification failed");
  }
  out.count = static_cast<i64>(out.solutions.size());
  return out;
}

KloostermanResidual kloosterman_residual(const HyperbolaInstance2& inst) {
  KloostermanResidual res;
  res.count = count_brute_2(inst).count;
  const i128 m2 = static_cast<i128>(inst.M) * inst.M;
  res.main = arith::make_rational(m2, inst.p);
  res.residual = arith::make_rational(static_cast<i128>(res.count) * inst.p - m2, inst.p);
  return res;
}

}  // namespace hypell::hyperbola2
