#pragma once

// Product sets of intervals in F_p^*: the exact cardinality of I1*I2*I3, the
// sixfold energy W (number of (x,y,z,x',y',z') with xyz = x'y'z' mod p), the
// multiplicative-character evaluation of W, and the Cauchy-Schwarz lower
// bound report tying them together.

#include <optional>
#include <vector>

#include "hypell/arith.hpp"
#include "hypell/errors.hpp"
#include "hypell/ints.hpp"

namespace hypell::productset {

struct IntervalFp {
  i64 p = 0;      // odd prime
  i64 start = 0;  // interval is [start, start+length-1], inside [1, p-1]
  i64 length = 0;
};

IntervalFp make_interval_fp(i64 p, i64 start, i64 length);

inline constexpr u64 DEFAULT_BUDGET = 100000000;  // max enumerated triples

struct ProductSetResult {
  i64 cardinality = 0;
  std::optional<std::vector<i64>> values;  // ascending, when requested
};

ProductSetResult product_set_3(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3,
                               u64 budget = DEFAULT_BUDGET, bool want_set = false);

// W = sum over c of m(c)^2 where m is the triple-product multiplicity map
i64 count_W_direct(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3,
                   u64 budget = DEFAULT_BUDGET);

inline constexpr i64 CHARACTER_P_CAP = 4096;

struct CharacterTable {
  i64 p = 0;
  i64 generator = 0;       // primitive root mod p
  std::vector<i32> index;  // discrete log base generator; index[0] = -1
};

CharacterTable make_character_table(i64 p);

// (1/(p-1)) * sum over the p-1 multiplicative characters of
// |S1|^2 |S2|^2 |S3|^2 with S_j = sum of chi over I_j; must come out integral
i64 count_W_characters(const IntervalFp& i1, const IntervalFp& i2, const IntervalFp& i3,
                       const CharacterTable& tbl);

struct ProductBoundReport {
  i64 cardinality = 0;
  i64 W = 0;
  arith::Rational ratio;  // (|I1| |I2| |I3|)^2 / W, the guaranteed lower bound
};

// asserts cardinality * W >= (|I1| |I2| |I3|)^2 exactly (Cauchy-Schwarz)
ProductBoundReport product_lower_bound_report(const IntervalFp& i1, const IntervalFp& i2,
                                              const IntervalFp& i3, u64 budget = DEFAULT_BUDGET);

}  // namespace hypell::productset
