#pragma once

// Points on the exponential curve y = a * g^x (mod p) with x in [K+1,K+M]
// and y in [L+1,L+M], plus the ordered-pair product statistic that the
// pigeonhole step of the two-point concentration argument relies on.

#include "hypell/arith.hpp"
#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/solution_set.hpp"

namespace hypell::expcurve {

// minimal t >= 1 with g^t = 1 (mod p); gcd(g, p) = 1 required
i64 multiplicative_order(i64 g, i64 p);

struct ExpCurveInstance {
  i64 p = 0;  // odd prime
  i64 g = 0;  // base, order t
  i64 t = 0;
  i64 a = 0;  // nonzero mod p
  i64 K = 0;
  i64 L = 0;
  i64 M = 0;  // 1 <= M <= t, so the y-values are pairwise distinct
};

// computes t; M may equal t (a full period still has distinct y-values)
ExpCurveInstance make_expcurve(i64 p, i64 g, i64 a, i64 K, i64 L, i64 M);

struct ExpCurveResult {
  i64 count = 0;
  PairSet solutions;  // absolute (x, y)
};

ExpCurveResult count_expcurve(const ExpCurveInstance& inst);

struct PairStat {
  i64 lambda_star = 0;  // most frequent product class y_i * y_j (smallest on ties)
  i64 pair_count = 0;   // its multiplicity among ordered pairs; >= ceil(k^2 / 2M)
};

PairStat pigeonhole_pair_stat(const ExpCurveInstance& inst);

}  // namespace hypell::expcurve
