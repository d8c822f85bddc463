#pragma once

// Integer points on A x^2 + B xy + C y^2 + D x + E y + F = 0 inside a box.
// Nondegenerate instances (discriminant B^2 - 4AC not a perfect square) reduce
// to a Pell-like equation in the transformed pair
//   X = delta*y + BD - 2EA,  Y = 2Ax + By + D,  X^2 - delta*Y^2 = tconst.
// Square discriminants get a typed error; an explicitly named brute-force
// enumerator is the fallback so nobody pays O(box^2) by accident.

#include "hypell/errors.hpp"
#include "hypell/ints.hpp"
#include "hypell/solution_set.hpp"

namespace hypell::conic {

struct ConicInstance {
  i64 A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
  i128 delta = 0;   // B^2 - 4AC
  i128 tconst = 0;  // (BD - 2EA)^2 + delta*(4AF - D^2)
  i64 box = 0;      // bound on |x|, |y|
};

// computes delta and tconst from the coefficients; box >= 1 required
ConicInstance make_conic(i64 A, i64 B, i64 C, i64 D, i64 E, i64 F, i64 box);

// All integer (x, y) with |x|, |y| <= box on the conic, via the Pell
// reduction. positive_filter drops solutions with x = 0 or y = 0.
// Throws DegenerateConicError when delta is a perfect square (including 0).
PairSet solve_conic_in_box(const ConicInstance& c, bool positive_filter = false);

// cardinality of the solution set restricted to 1 <= |x|, |y| <= box
i64 count_conic_solutions(const ConicInstance& c);

// Exhaustive per-y enumeration; works for every instance including
// degenerate ones. O(box) rows, each solved in closed form.
PairSet solve_conic_brute(const ConicInstance& c);

}  // namespace hypell::conic
