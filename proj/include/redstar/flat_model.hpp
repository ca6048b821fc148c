#pragma once

#include <string>
#include <vector>

#include "redstar/linalg.hpp"
#include "redstar/nu_series.hpp"

namespace redstar {

/// Components of a vector field or a 1-form on the cone.
using Field = std::vector<LaurentH>;
/// Two-index array of functions; the valence is fixed by context.
using FieldMatrix = std::vector<std::vector<LaurentH>>;

/// Flat cone model. Coordinates are q_i = x_i and p_i = x_{n+1+i} for
/// i = 0..n, so N = 2n+2. Conventions: Lambda = [[0, I], [-I, 0]] gives
/// {q_i, p_i} = 1, mu is its inverse, X_H = {H, .} and H = x^T G x / 2.
class FlatModel {
 public:
  FlatModel(int n, std::vector<int> signature);

  int n() const { return n_; }
  int dim() const { return 2 * n_ + 2; }
  const std::vector<int>& signature() const { return signature_; }
  const HRingPtr& ring() const { return ring_; }
  const Matrix& mu() const { return mu_; }
  const Matrix& lambda() const { return lambda_; }
  const Matrix& gram() const { return gram_; }
  /// Matrix A of the linear field X_H, X_H^a = A^a_b x^b.
  const Matrix& xh_matrix() const { return xh_matrix_; }
  /// True when every (q_i, p_i) pair has equal signs, or every pair has
  /// opposite signs. These are the signatures with constant phi.
  bool admissible() const;
  std::vector<std::string> variable_names() const;

  LaurentH H() const;
  LaurentH coord(int a) const;
  LaurentH constant(const Scalar& c) const { return LaurentH::constant(ring_, c); }
  LaurentH zero() const { return LaurentH(ring_); }
  const Field& S() const { return S_; }
  const Field& XH() const { return XH_; }
  const Field& ds() const { return ds_; }
  const Field& alpha() const { return alpha_; }
  /// Coordinate field d_a.
  Field coord_field(int a) const;

  /// Lambda(df, dg).
  LaurentH poisson(const LaurentH& f, const LaurentH& g) const;
  LaurentH lie_XH(const LaurentH& f) const;
  LaurentH lie_S(const LaurentH& f) const { return f.lie_S(); }
  /// mu(v, w).
  LaurentH mu_pair(const Field& v, const Field& w) const;
  /// G(v, w), the flat Hessian of H.
  LaurentH gram_pair(const Field& v, const Field& w) const;

  /// v - ds(v) S + alpha(v) X_H.
  Field horizontal_project(const Field& v) const;
  /// B = H Lambda - S wedge X_H, B^{ab}.
  FieldMatrix reduced_bivector() const;
  /// Pi^a_b.
  FieldMatrix projector() const;

 private:
  int n_;
  std::vector<int> signature_;
  HRingPtr ring_;
  Matrix mu_, lambda_, gram_, xh_matrix_;
  Field S_, XH_, ds_, alpha_;
};

FlatModel build_model(int n, const std::vector<int>& signature);
/// All +1.
FlatModel build_model(int n);

// Field calculus with the flat connection.
Field zero_field(const FlatModel& m);
LaurentH apply_field(const Field& v, const LaurentH& f);
LaurentH pair(const Field& form, const Field& v);
/// Flat covariant derivative nabla_v w.
Field covariant(const Field& v, const Field& w);
Field lie_bracket(const Field& v, const Field& w);
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field scale(const Field& v, const LaurentH& f);
Field scale(const Field& v, const Scalar& c);
bool is_zero(const Field& v);

}  // namespace redstar
