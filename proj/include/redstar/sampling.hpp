#pragma once

#include <cstdint>
#include <random>

#include "redstar/flat_model.hpp"

namespace redstar {

/// Deterministic random source. Draws use plain modular reduction of the
/// 64-bit Mersenne twister so streams are identical on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  int uniform(int lo, int hi);
  /// Nonzero rational num/den with |num| <= max_num and den in [1, max_den].
  Scalar nonzero_scalar(int max_num = 4, int max_den = 3);

  /// Random polynomial with `terms` terms, each homogeneous of a degree
  /// drawn from `degrees`.
  MultiPoly poly(int nvars, const std::vector<int>& degrees, int terms);

  /// Random LaurentH: for each k <= max_hpow, a numerator of degree
  /// <= max_deg (no parity restriction).
  LaurentH laurent(const FlatModel& m, int max_deg, int max_hpow, int terms = 3);
  /// Strict-mode element: all numerators of even degree.
  LaurentH even_laurent(const FlatModel& m, int max_deg, int max_hpow, int terms = 3);
  /// X_H-invariant, S-degree 0 element built from products of j invariant
  /// quadratics over H^j for j <= max_j.
  LaurentH invariant_degree0(const FlatModel& m, int max_j, int terms = 3);
  /// S-degree 0 element, generically not invariant.
  LaurentH sigma_function(const FlatModel& m, int max_j, int terms = 3);

 private:
  std::mt19937_64 rng_;
};

/// Basis of the X_H-invariant quadratic polynomials (exact nullspace of
/// X_H acting on degree-2 monomials).
std::vector<MultiPoly> invariant_quadratics(const FlatModel& m);

/// True when every coefficient is X_H-invariant and of S-degree 0.
bool is_invariant_degree0(const FlatModel& m, const LaurentH& f);

}  // namespace redstar
