#pragma once

#include <map>

#include "redstar/check.hpp"
#include "redstar/frame_checks.hpp"
#include "redstar/koszul.hpp"

namespace redstar {

/// Delta f = C_2(f, H).
LaurentH delta_op(const FlatModel& m, const LaurentH& f);
NuSeries delta_op(const FlatModel& m, const NuSeries& f);

struct GeometryScalars {
  int n = 0;
  Scalar phi;
  /// f = phi (n+1)(2n+1)/4.
  Scalar f;
  Field V_lift;
  /// U = (n+1)(2n+1)/2 V.
  Field U_lift;
  Scalar tr_rho2;
  /// K = tr rho^2 + 4(n+1) f/(2n+1).
  Scalar K;
};

/// Derives phi, V, tr rho^2 and K from the Hessian decomposition and
/// cross-checks them against Delta(H^{-1}), the k-pattern of
/// Delta(H^{-k} u) for k <= 3 and the divergence of U. Throws
/// ModelInconsistency when phi or tr rho^2 is not constant or a cross-check
/// fails.
GeometryScalars derive_scalars(const FlatModel& m);

/// Delta_Ric u := -(n+1) iota^*(H Delta(pr^* u)) - L_U u/(2n+1).
LaurentH delta_ric(const FlatModel& m, const GeometryScalars& g, const LaurentH& u);

/// Closed form of Delta(H^{-k} pr^* u) for invariant degree-0 u; the result
/// is H^{-(k+1)} times the returned invariant degree-0 function.
LaurentH delta_hk_coefficient(const FlatModel& m, const GeometryScalars& g, const LaurentH& u, int k,
                              const LaurentH& delta_ric_u);

/// h(H^{-k} pr^* u) = -(H^{-1} + ... + H^{-k}) pr^* u; zero for k = 0.
LaurentH h_on_Hk(const FlatModel& m, const LaurentH& u, int k);

/// (kappa_q - d) f = (nu^2/8) Delta f for invariant f.
CheckResult koszul_difference_check(const FlatModel& m, const NuSeries& f);
/// q-iota f = iota^*(id + (nu^2/8) Delta h)^{-1} f for invariant f, against
/// the generic quantum restriction.
CheckResult closed_restriction_check(const FlatModel& m, const NuSeries& f);
/// The k-coefficient pattern of Delta(H^{-k} u), k = 0..max_k.
CheckResult delta_hk_pattern_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& u, int max_k);

/// C_2(f, H) against the frame-geometry expression built from the Ricci
/// lift, V, phi and Lie derivatives along S, X_H and V.
CheckResult delta_explicit_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& f);

/// Reduced product through the closed-form recursion
/// iota^* sum_r nu^r sum_{2s+t=r} (Delta h)^s (H^{-t} C^_t) / ((-8)^s 2^t t!).
NuSeries fast_reduced_product(const FlatModel& m, const GeometryScalars& g, const NuSeries& u, const NuSeries& v);

/// C_2^red(u, v) = B B (Hess u)(Hess v) + (Delta_Ric(uv) - u Delta_Ric v - v Delta_Ric u)/(n+1).
CheckResult second_order_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& u, const LaurentH& v);

/// Flat Hessian of pr^* u on (horizontal, X_H, S) against the pull-back
/// table.
CheckResult pullback_hessian_table_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& u);

}  // namespace redstar
