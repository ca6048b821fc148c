#pragma once

#include <vector>

#include "redstar/laurent.hpp"

namespace redstar {

/// Truncated formal series sum_{r=0}^{order} nu^r f_r with LaurentH
/// coefficients. Results of every operation are exact modulo nu^{order+1}.
class NuSeries {
 public:
  NuSeries() = default;
  NuSeries(HRingPtr ring, int order);
  NuSeries(HRingPtr ring, int order, const LaurentH& f0);

  const HRingPtr& ring() const { return ring_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const LaurentH& operator[](int r) const { return coeffs_.at(static_cast<std::size_t>(r)); }
  LaurentH& operator[](int r) { return coeffs_.at(static_cast<std::size_t>(r)); }
  const std::vector<LaurentH>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// Smallest r with a nonzero coefficient; order()+1 for zero.
  int valuation() const;

  NuSeries operator-() const;
  NuSeries& operator+=(const NuSeries& other);
  NuSeries& operator-=(const NuSeries& other);
  NuSeries& operator*=(const Scalar& c);
  friend NuSeries operator+(NuSeries a, const NuSeries& b) { return a += b; }
  friend NuSeries operator-(NuSeries a, const NuSeries& b) { return a -= b; }
  friend NuSeries operator*(NuSeries a, const Scalar& c) { return a *= c; }
  friend NuSeries operator*(const Scalar& c, NuSeries a) { return a *= c; }
  friend bool operator==(const NuSeries& a, const NuSeries& b);
  friend bool operator!=(const NuSeries& a, const NuSeries& b) { return !(a == b); }

  /// Multiplies by nu^k, dropping what falls past the truncation.
  NuSeries shift_nu(int k) const;
  /// Pointwise (commutative) product, truncated.
  NuSeries pointwise(const NuSeries& other) const;
  /// Applies a LaurentH-linear map coefficient-wise.
  template <class F>
  NuSeries map(F&& f) const {
    NuSeries out(ring_, order());
    for (int r = 0; r <= order(); ++r) out[r] = f(coeffs_[static_cast<std::size_t>(r)]);
    return out;
  }
  /// nu d/dnu.
  NuSeries nu_degree() const;
  /// The involution nu -> -nu.
  NuSeries conjugate() const;

 private:
  void check(const NuSeries& other) const;

  HRingPtr ring_;
  std::vector<LaurentH> coeffs_;
};

}  // namespace redstar
