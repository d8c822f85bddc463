#pragma once

// Solutions of x*y = lambda (mod p) in the box [K+1,K+M] x [L+1,L+M], two
// independent routes: an O(M) brute-force count with batched inversions, and
// the sublinear reduction through a pigeonhole triple (t, u0, v0) to finitely
// many integer divisor equations (t x' + u0)(t y' + v0) = n_z, one per z in a
// short exactly-computed range. Solutions are reported in absolute
// coordinates so the two routes compare with ==.

#include "hypell/arith.hpp"
#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/solution_set.hpp"

namespace hypell::hyperbola2 {

// p odd prime; lambda nonzero mod p; 1 <= M <= p.
// p, |K|, |L| are capped at 2^60 so every derived sum stays in 64 bits.
struct HyperbolaInstance2 {
  i64 p = 0;
  i64 lambda = 0;
  i64 K = 0;
  i64 L = 0;
  i64 M = 0;
};

// validates and normalizes lambda into [1, p-1]
HyperbolaInstance2 make_instance_2(i64 p, i64 lambda, i64 K, i64 L, i64 M);

struct PigeonholeTriple {
  i64 t = 0;   // 1 <= t <= T^2 (t <= T when K = L mod p)
  i64 u0 = 0;  // t*K centered, |u0| <= p/T
  i64 v0 = 0;  // t*L centered, |v0| <= p/T
  i64 T = 0;
};

// scans t upward and returns the first triple with both residues small;
// pigeonhole guarantees one exists for some t <= T^2, so exhaustion throws
PigeonholeTriple find_pigeonhole_triple(i64 p, i64 K, i64 L, i64 T);

struct ReducedEquation2 {
  PigeonholeTriple triple;
  arith::CenteredResidue b0;  // t*(lambda - K*L) centered
  i64 z_lo = 0, z_hi = 0;     // inclusive; endpoints obey |z| < T^2 M^2/p + 2M/T + 1/2
};

// picks T (8M in the one-z regime 256 M^4 < p, else the nearest integer to
// (p/M)^(1/3)) and assembles the reduced equation
ReducedEquation2 reduce_2(const HyperbolaInstance2& inst);

// right-hand side n_z = t*(b0 + z*p) + u0*v0 of the divisor equation
inline i128 reduced_nz(const ReducedEquation2& red, i64 z) {
  return static_cast<i128>(red.triple.t) *
             (static_cast<i128>(red.b0.value) + static_cast<i128>(z) * red.b0.modulus) +
         static_cast<i128>(red.triple.u0) * red.triple.v0;
}

struct CountResult2 {
  i64 count = 0;
  PairSet solutions;  // absolute (x, y)
};

CountResult2 count_brute_2(const HyperbolaInstance2& inst);

struct FastResult2 {
  i64 count = 0;
  PairSet solutions;
  i64 z_width = 0;  // number of z values examined
};

// divisor-based enumeration; output identical to count_brute_2.
// Throws FactorError naming the offending n_z if factorization work runs out.
FastResult2 enumerate_fast_2(const HyperbolaInstance2& inst);

struct KloostermanResidual {
  i64 count = 0;
  arith::Rational main;      // M^2 / p
  arith::Rational residual;  // count - M^2 / p
};

KloostermanResidual kloosterman_residual(const HyperbolaInstance2& inst);

}  // namespace hypell::hyperbola2
