#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace redstar {

/// Exact rational scalar. gmp keeps every value in lowest terms with a
/// positive denominator.
using Scalar = mpq_class;

/// Raised on malformed or incompatible input (exit code 2 at the CLI).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a model fails one of its own structure identities.
class ModelInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two independent routes to the same quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Scalar make_scalar(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& q);

Scalar factorial(int k);
Scalar binomial(int n, int k);

}  // namespace redstar
