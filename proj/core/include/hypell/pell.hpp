#pragma once

// Pell machinery: fundamental solution of x^2 - A y^2 = 1 via the periodic
// continued fraction of sqrt(A), the unit orbit, and the class-based solver
// for x^2 - A y^2 = E. Wide values (fundamental solutions grow exponentially
// in sqrt(A)) are held in an arbitrary-precision integer type; reported
// solutions are clamped by the caller's search bound and fit in 64 bits.

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/solution_set.hpp"

namespace hypell::pell {

using bigint = boost::multiprecision::cpp_int;

struct PellFundamental {
  i64 A = 0;
  bigint x0, y0;  // minimal solution with x0, y0 >= 1
};

// A >= 2 and not a perfect square; throws OverflowError past period_cap
PellFundamental fundamental_solution(i64 A, std::size_t period_cap = 1000000);

// unit-group action: (x1,y1)*(x2,y2) -> (x1 x2 + A y1 y2, x1 y2 + y1 x2)
std::pair<bigint, bigint> compose(i64 A, const std::pair<bigint, bigint>& s,
                                  const std::pair<bigint, bigint>& t);

// all positive solutions of x^2 - A y^2 = 1 with x <= bound, generated by
// composing the fundamental solution with itself
PairSet pell_orbit(const PellFundamental& f, i64 bound);
PairSet pell_orbit(i64 A, i64 bound, std::size_t period_cap = 1000000);

struct PellLikeInstance {
  i64 A = 0;      // nonsquare, may be negative
  i64 E = 0;      // nonzero right-hand side
  i64 bound = 0;  // max coordinate magnitude searched
};

// All (x, y) with x^2 - A y^2 = E and 1 <= x, y <= bound. With all_signs,
// the four sign reflections of each positive pair are included.
PairSet solve_pell_like(const PellLikeInstance& inst, bool all_signs = false);

}  // namespace hypell::pell
