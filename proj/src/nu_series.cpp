#include "redstar/nu_series.hpp"

namespace redstar {

NuSeries::NuSeries(HRingPtr ring, int order) : ring_(std::move(ring)) {
  if (order < 0) throw InputError("truncation order must be non-negative");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, LaurentH(ring_));
}

NuSeries::NuSeries(HRingPtr ring, int order, const LaurentH& f0) : NuSeries(std::move(ring), order) {
  coeffs_[0] = f0;
}

bool NuSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

int NuSeries::valuation() const {
  for (int r = 0; r <= order(); ++r)
    if (!coeffs_[static_cast<std::size_t>(r)].is_zero()) return r;
  return order() + 1;
}

void NuSeries::check(const NuSeries& other) const {
  if (order() != other.order()) throw InputError("truncation orders differ");
}

NuSeries NuSeries::operator-() const {
  NuSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

NuSeries& NuSeries::operator+=(const NuSeries& other) {
  check(other);
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += other.coeffs_[r];
  return *this;
}

NuSeries& NuSeries::operator-=(const NuSeries& other) {
  check(other);
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] -= other.coeffs_[r];
  return *this;
}

NuSeries& NuSeries::operator*=(const Scalar& c) {
  for (auto& f : coeffs_) f *= c;
  return *this;
}

bool operator==(const NuSeries& a, const NuSeries& b) {
  if (a.order() != b.order()) return false;
  for (std::size_t r = 0; r < a.coeffs_.size(); ++r)
    if (a.coeffs_[r] != b.coeffs_[r]) return false;
  return true;
}

NuSeries NuSeries::shift_nu(int k) const {
  NuSeries out(ring_, order());
  for (int r = 0; r <= order(); ++r) {
    int t = r + k;
    if (t >= 0 && t <= order()) out[t] = coeffs_[static_cast<std::size_t>(r)];
  }
  return out;
}

NuSeries NuSeries::pointwise(const NuSeries& other) const {
  check(other);
  NuSeries out(ring_, order());
  for (int t = 0; t <= order(); ++t) {
    LaurentAccumulator acc(ring_);
    for (int r = 0; r <= t; ++r) acc.add_product((*this)[r], other[t - r], Scalar(1));
    out[t] = std::move(acc).finish();
  }
  return out;
}

NuSeries NuSeries::nu_degree() const {
  NuSeries out = *this;
  for (int r = 0; r <= order(); ++r) out[r] *= Scalar(r);
  return out;
}

NuSeries NuSeries::conjugate() const {
  NuSeries out = *this;
  for (int r = 1; r <= order(); r += 2) out[r] = -out[r];
  return out;
}

}  // namespace redstar
