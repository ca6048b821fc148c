#include <chrono>

#include "doctest.h"
#include "redstar/closed_form.hpp"

using namespace redstar;

TEST_CASE("delta examples") {
  FlatModel m = build_model(2);
  CHECK(delta_op(m, m.constant(1)).is_zero());
  // Oracle: for G = I, Delta is the flat Laplacian and
  // Lap(H^{-k}) = -k H^{-k-1} Lap H + k(k+1) H^{-k-2} |grad H|^2 = k(2k-2n) H^{-k-1}.
  for (int k = 1; k <= 4; ++k)
    CHECK(delta_op(m, LaurentH::h_power(m.ring(), k)) == LaurentH::h_power(m.ring(), k + 1) * Scalar(k * (2 * k - 4)));
  Sampler s(1);
  for (int t = 0; t < 5; ++t) {
    LaurentH f = s.even_laurent(m, 4, 2);
    CHECK(m.lie_XH(delta_op(m, f)) == delta_op(m, m.lie_XH(f)));
  }
}

TEST_CASE("derived scalars") {
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  CHECK(g.phi == -2);
  CHECK(g.f == Scalar(-15, 2));
  CHECK(is_zero(g.V_lift));
  CHECK(g.tr_rho2 == -36);
  CHECK(g.K == -54);
  // Delta(H^{-1}) through Lemma-style constants: -1/(n+1) H^{-2}(-tr/(n+1) + 4f/(2n+1)) = -2 H^{-2}.
  CHECK(Scalar(-1, 3) * (-g.tr_rho2 / 3 + 4 * g.f / 5) == -2);
  for (int n : {1, 2}) {
    std::vector<int> opposite(static_cast<std::size_t>(2 * n + 2), 1);
    for (int i = n + 1; i < 2 * n + 2; ++i) opposite[static_cast<std::size_t>(i)] = -1;
    GeometryScalars go = derive_scalars(build_model(n, opposite));
    CHECK(go.phi == 2);
    GeometryScalars gd = derive_scalars(build_model(n));
    CHECK(gd.tr_rho2 == -2 * n * (n + 1) * (n + 1));
  }
  CHECK_THROWS_AS(derive_scalars(build_model(2, {-1, -1, 1, -1, 1, 1})), ModelInconsistency);
}

TEST_CASE("closed forms on invariant input") {
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s(2);
  for (int t = 0; t < 4; ++t) {
    LaurentH u = s.invariant_degree0(m, 2);
    CHECK(h_on_Hk(m, u, 0).is_zero());
    for (int k = 0; k <= 4; ++k) CHECK(h_on_Hk(m, u, k) == homotopy_h(u.shift_hpow(k)));
    CHECK(delta_op(m, u) == delta_hk_coefficient(m, g, u, 0, delta_ric(m, g, u)).shift_hpow(1));
    CHECK(delta_hk_pattern_check(m, g, u, 3).pass);
    NuSeries f = to_series(m, u.shift_hpow(t % 3) * m.H(), 4);
    CHECK(koszul_difference_check(m, f).pass);
    CHECK(closed_restriction_check(m, f).pass);
  }
}

TEST_CASE("delta explicit form") {
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s(3);
  LaurentH u = s.invariant_degree0(m, 2);
  for (const LaurentH& f : {u, LaurentH::h_power(m.ring(), 1), m.H() * u, u.shift_hpow(2)}) {
    auto r = delta_explicit_check(m, g, f);
    CHECK_MESSAGE(r.pass, r.witness);
  }
  FlatModel mo = build_model(1, {1, 1, -1, -1});
  GeometryScalars go = derive_scalars(mo);
  Sampler s2(4);
  LaurentH uo = s2.invariant_degree0(mo, 2);
  CHECK(delta_explicit_check(mo, go, uo).pass);
  CHECK(delta_explicit_check(mo, go, mo.H() * uo).pass);
}

TEST_CASE("second order and pull-back Hessians") {
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s(5);
  for (int t = 0; t < 3; ++t) {
    LaurentH u = s.invariant_degree0(m, 2), v = s.invariant_degree0(m, 2);
    auto r = second_order_check(m, g, u, v);
    CHECK_MESSAGE(r.pass, r.witness);
    CHECK(second_order_check(m, g, u, u).pass);
    auto p = pullback_hessian_table_check(m, g, u);
    CHECK_MESSAGE(p.pass, p.witness);
  }
  CHECK(second_order_check(m, g, m.constant(3), s.invariant_degree0(m, 2)).pass);
}

TEST_CASE("fast reduced product agrees with the direct construction") {
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s(6);
  const int order = 4;
  NuSeries one = to_series(m, m.constant(1), order);
  NuSeries v0 = to_series(m, s.invariant_degree0(m, 2), order);
  CHECK(fast_reduced_product(m, g, one, v0) == v0);
  auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 2; ++t) {
    NuSeries u = to_series(m, s.invariant_degree0(m, 2), order), v = to_series(m, s.invariant_degree0(m, 2), order);
    NuSeries fast = fast_reduced_product(m, g, u, v);
    NuSeries direct = reduced_product(m, u, v);
    CHECK(fast == direct);
    CHECK(fast[2] * Scalar(8) == extract_operators(m, u, v, 2).c_hat);
  }
  MESSAGE("2 pairs in " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
}
