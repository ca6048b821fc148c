#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "redstar/multipoly.hpp"

namespace redstar {

/// The polynomial H that LaurentH denominators are powers of, with its
/// cached gradient.
struct HRing {
  HRing(int nvars, MultiPoly h);

  int nvars;
  MultiPoly H;
  std::vector<MultiPoly> dH;
};

using HRingPtr = std::shared_ptr<const HRing>;

HRingPtr make_hring(int nvars, MultiPoly h);

/// One S-homogeneous piece p * H^{-k} with p homogeneous of total degree
/// `degree`.
struct LaurentPiece {
  int hpow;
  int degree;
  MultiPoly poly;
};

/// A function sum_k p_k H^{-k} with polynomial numerators.
///
/// Canonical form: for k >= 1 every p_k is reduced modulo H (no term is
/// divisible by the leading monomial of H), the quotient having been
/// carried into slot k-1; trailing zero slots are dropped. Because {H} is
/// a Groebner basis of (H) this form is unique, so equality is slot-wise.
class LaurentH {
 public:
  LaurentH() = default;
  explicit LaurentH(HRingPtr ring);
  LaurentH(HRingPtr ring, std::vector<MultiPoly> slots);

  static LaurentH from_poly(HRingPtr ring, MultiPoly p);
  static LaurentH constant(HRingPtr ring, const Scalar& c);
  /// H^{-k}; k may be negative (positive powers of H).
  static LaurentH h_power(HRingPtr ring, int k);

  const HRingPtr& ring() const { return ring_; }
  int nvars() const { return ring_ ? ring_->nvars : 0; }
  bool is_zero() const { return slots_.empty(); }
  /// Largest k with a nonzero slot, or -1 for zero.
  int max_hpow() const { return static_cast<int>(slots_.size()) - 1; }
  const std::vector<MultiPoly>& slots() const { return slots_; }
  const MultiPoly& slot(int k) const;

  LaurentH operator-() const;
  LaurentH& operator+=(const LaurentH& other);
  LaurentH& operator-=(const LaurentH& other);
  LaurentH& operator*=(const Scalar& c);
  friend LaurentH operator+(LaurentH a, const LaurentH& b) { return a += b; }
  friend LaurentH operator-(LaurentH a, const LaurentH& b) { return a -= b; }
  friend LaurentH operator*(const LaurentH& a, const LaurentH& b);
  friend LaurentH operator*(LaurentH a, const Scalar& c) { return a *= c; }
  friend LaurentH operator*(const Scalar& c, LaurentH a) { return a *= c; }
  friend bool operator==(const LaurentH& a, const LaurentH& b);
  friend bool operator!=(const LaurentH& a, const LaurentH& b) { return !(a == b); }

  LaurentH times_poly(const MultiPoly& p) const;
  /// Multiplies by H^{-k}.
  LaurentH shift_hpow(int k) const;

  /// d/dx_i using d(H^{-k}) = -k H^{-k-1} dH.
  LaurentH derivative(int i) const;
  /// Lie derivative along S = (1/2) x^a d_a.
  LaurentH lie_S() const;

  /// S-homogeneous pieces of the canonical representative.
  std::vector<LaurentPiece> pieces() const;
  /// True when every piece has S-degree zero.
  bool is_degree_zero() const;
  /// Numerator after multiplying by H^{max_hpow}.
  MultiPoly cleared() const;
  bool is_constant() const;
  Scalar constant_value() const;

  Scalar evaluate(std::span<const Scalar> point) const;
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void normalize();
  void check_ring(const LaurentH& other) const;

  HRingPtr ring_;
  std::vector<MultiPoly> slots_;
};

/// Collects raw numerator terms per H-power; merging, sorting and the
/// reduction modulo H happen once in finish().
class LaurentAccumulator {
 public:
  explicit LaurentAccumulator(HRingPtr ring) : ring_(std::move(ring)) {}

  void add(int hpow, const MultiPoly& p);
  void add(const LaurentH& f, const Scalar& c = Scalar(1));
  /// Adds c * a * b.
  void add_product(const LaurentH& a, const LaurentH& b, const Scalar& c);
  LaurentH finish() &&;

 private:
  TermBuffer& raw(int hpow);

  HRingPtr ring_;
  std::vector<TermBuffer> raw_;
};

}  // namespace redstar
