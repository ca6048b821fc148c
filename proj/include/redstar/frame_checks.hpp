#pragma once

#include "redstar/check.hpp"
#include "redstar/flat_model.hpp"

namespace redstar {

/// Structure identities of the model itself: mu antisymmetric and
/// invertible, Lie_S mu = mu, Lie_{X_H} mu = 0, Lie_S H = H, the ds/alpha
/// pairings with S and X_H, and vanishing third derivatives of H.
CheckResult validate_model(const FlatModel& m);

/// Pi idempotent, Pi S = Pi X_H = 0, ds and alpha kill the image,
/// trace Pi = 2n.
CheckResult projector_checks(const FlatModel& m);

/// B(ds, .) = 0 = B(alpha, .), B antisymmetric with quadratic entries.
CheckResult reduced_bivector_checks(const FlatModel& m);

/// [B, B] = -2 B wedge X_H with [P, P]^{ijk} = 2 sum_cyc P^{il} d_l P^{jk}.
/// `flip_lambda` negates only the H Lambda part of B; the identity then
/// fails, which is the diagnostic for a wrong orientation.
CheckResult schouten_check(const FlatModel& m, bool flip_lambda = false);

/// Generated horizontal fields v_a = Pi d_a.
std::vector<Field> horizontal_fields(const FlatModel& m);

struct HessianDecomposition {
  /// t(v, w) for horizontal v, w, as the covariant 2-tensor -(Pi^T G Pi)/H.
  FieldMatrix t_lift;
  /// Horizontal V with (nabla_v dH)(X_H) = mu(v, V).
  Field V_lift;
  /// (nabla_{X_H} dH)(X_H) = -phi H.
  LaurentH phi;
  /// tau^a_d = Pi^a_b Lambda^{bc} H t_{cd}; mu(w, tau v) = H t(w, v).
  FieldMatrix tau;
};

/// Splits Hess H = G along (horizontal, X_H, S) and verifies the S blocks;
/// throws ModelInconsistency on any failed block.
HessianDecomposition hessian_decompose_H(const FlatModel& m);

/// Applies a (1,1)-tensor to a vector field.
Field apply_endo(const FieldMatrix& T, const Field& v);
/// Evaluates a covariant 2-tensor on two vector fields.
LaurentH apply_form2(const FieldMatrix& T, const Field& v, const Field& w);

/// The connection table on P restricted to generated horizontal fields.
CheckResult connection_split_check(const FlatModel& m);

/// Bracket identities for generated horizontal fields and genuine lifts.
CheckResult bracket_checks(const FlatModel& m);

/// Constant matrices commuting with the matrix of X_H; Pi(C x) is then a
/// genuine horizontal lift.
std::vector<Matrix> xh_commutant_basis(const FlatModel& m);

}  // namespace redstar
