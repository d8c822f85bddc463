#pragma once

// Solutions of x*y*z = lambda (mod p) in the cube [L+1,L+M]^3: an O(M^2)
// brute-force oracle with batched inversions, and a fast path that applies
// when L reconstructs as a small modular fraction u/v — then the congruence
// collapses to the integer equation (vx+u)(vy+u)(vz+u) = c over shifted
// coordinates x,y,z in [1,M], solved by divisor enumeration.

#include <optional>
#include <string>

#include "hypell/arith.hpp"
#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/solution_set.hpp"

namespace hypell::hyperbola3 {

struct HyperbolaInstance3 {
  i64 p = 0;       // odd prime
  i64 lambda = 0;  // nonzero mod p
  i64 L = 0;
  i64 M = 0;       // 1 <= M <= p
};

HyperbolaInstance3 make_instance_3(i64 p, i64 lambda, i64 L, i64 M);

struct CountResult3 {
  i64 count = 0;
  TripleSet solutions;  // shifted coordinates (x,y,z) in [1,M]^3
};

CountResult3 count_brute_3(const HyperbolaInstance3& inst);

// assembled when L = u * v^(-1) (mod p) for small u, v. The size caps are the
// exact-integer forms of |u| <= M^3/k, |v| <= M^2/k with k = max{1, 2M^2/p^(1/4)}:
// when 16 M^8 <= p they are |u| <= M^3, |v| <= M^2, otherwise
// (2u)^4 <= M^4 p and (2v)^4 <= p.
struct TripleFastContext {
  HyperbolaInstance3 inst;
  i64 u = 0;
  i64 v = 1;                 // > 0 after normalization
  arith::CenteredResidue mu; // v^2 (lambda - L^3) centered, |mu| < p/2
  i128 c = 0;                // v*mu + u^3, nonzero
};

std::optional<TripleFastContext> try_fast_context(const HyperbolaInstance3& inst);

// size condition making congruence and integer equation coincide: the cross
// terms are bounded by 7 M^7 / k^2 < p/2, which with k as above is exactly
// 14 M^7 < p when 16 M^8 <= p and 49 M^6 < 4p otherwise
bool product_form_applicable(i64 p, i64 M);

// divisor enumeration over (vx+u)(vy+u)(vz+u) = c; requires applicability,
// else FastPathError. Output in shifted coordinates, equal to brute force.
TripleSet solve_product_form(const TripleFastContext& ctx);

struct Count3Result {
  i64 count = 0;
  std::string method;  // "fast" or "brute"
};

Count3Result count_3(const HyperbolaInstance3& inst);

}  // namespace hypell::hyperbola3
