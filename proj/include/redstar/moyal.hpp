#pragma once

#include <map>
#include <vector>

#include "redstar/check.hpp"
#include "redstar/flat_model.hpp"

namespace redstar {

/// Memoized higher partial derivatives of one LaurentH, keyed by the
/// exponent vector of the derivative.
class DerivativeCache {
 public:
  explicit DerivativeCache(LaurentH f);

  const LaurentH& get(const std::vector<int>& exps);
  const LaurentH& base() const { return base_; }

 private:
  LaurentH base_;
  std::map<std::vector<int>, LaurentH> cache_;
};

/// Constant-coefficient bidifferential operator
/// sum P^{i1 j1}...P^{ir jr} (d^r f)_{i..} (d^r g)_{j..}
/// for an arbitrary constant matrix P (Lambda for C_r, M for Delta).
LaurentH contract_r(const Matrix& P, DerivativeCache& f, DerivativeCache& g, int r);

/// C_r(f, g) with the Poisson matrix of the model.
LaurentH c_r(const FlatModel& m, const LaurentH& f, const LaurentH& g, int r);

/// Constant LaurentH lifted into a series of the given order.
NuSeries to_series(const FlatModel& m, const LaurentH& f, int order);

/// f * g = sum_r (nu/2)^r / r! C_r(f, g), truncated at the common order.
NuSeries moyal(const FlatModel& m, const NuSeries& f, const NuSeries& g);

/// (1/nu) ad(H) f = X_H f with no truncation loss: the commutator is
/// formed one order higher than f and C_r(H, .) is confirmed to vanish
/// for r >= 3.
CheckResult ad_H_check(const FlatModel& m, const NuSeries& f);

/// E = nu d/dnu + Lie_S is a derivation of the product.
CheckResult nu_euler_check(const FlatModel& m, const NuSeries& f, const NuSeries& g);

/// C_r(f, g) = (-1)^r C_r(g, f).
CheckResult parity_check(const FlatModel& m, const LaurentH& f, const LaurentH& g, int r);

NuSeries nu_euler(const NuSeries& f);

}  // namespace redstar
