#pragma once

#include <stdexcept>
#include <string>

namespace hypell {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// invalid arguments (out-of-range instance fields, square Pell A, ...)
struct DomainError : Error {
  using Error::Error;
};

// factorization work bound exceeded
struct FactorError : Error {
  using Error::Error;
};

// conic with square discriminant; transform method does not apply
struct DegenerateConicError : Error {
  using Error::Error;
};

// 3d product-form size gate failed; use the brute path instead
struct FastPathError : Error {
  using Error::Error;
};

// enumeration budget exceeded (product sets)
struct BudgetError : Error {
  using Error::Error;
};

// internal bound exceeded (continued fraction period cap, value range)
struct OverflowError : Error {
  using Error::Error;
};

// experiment config file problems, with line diagnostics
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace hypell
