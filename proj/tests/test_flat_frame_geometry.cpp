#include "doctest.h"
#include "redstar/frame_checks.hpp"

using namespace redstar;

namespace {

std::vector<std::vector<int>> signatures(int n) {
  const int N = 2 * n + 2;
  std::vector<std::vector<int>> out;
  out.push_back(std::vector<int>(static_cast<std::size_t>(N), 1));
  out.push_back(std::vector<int>(static_cast<std::size_t>(N), -1));
  std::vector<int> opposite(static_cast<std::size_t>(N), 1);
  for (int i = n + 1; i < N; ++i) opposite[static_cast<std::size_t>(i)] = -1;
  out.push_back(opposite);
  std::vector<int> mixed(static_cast<std::size_t>(N), 1);
  mixed[0] = -1;
  mixed[static_cast<std::size_t>(n + 1)] = -1;
  mixed[1] = -1;
  out.push_back(mixed);
  return out;
}

}  // namespace

TEST_CASE("build_model rejects bad input") {
  CHECK_THROWS_AS(build_model(0), InputError);
  CHECK_THROWS_AS(build_model(1, {1, 1, 0, 1}), InputError);
  CHECK_THROWS_AS(build_model(1, {1, 1, 1}), InputError);
}

TEST_CASE("model invariants and basic pairings") {
  FlatModel m = build_model(2);
  CHECK(m.dim() == 6);
  CHECK(pair(m.ds(), m.XH()).is_zero());
  // Oracle: alpha(X_H) = mu(S, X_H)/H by direct matrix contraction with the
  // explicit q/p blocks, mu(S, X_H) = -x^T x / 2 for G = I.
  LaurentH by_hand = m.zero();
  for (int i = 0; i <= 2; ++i) {
    LaurentH q = m.coord(i), p = m.coord(3 + i);
    // X_H = sum p d_q - q d_p, S = x/2, mu = [[0,-I],[I,0]].
    by_hand += (q * Scalar(1, 2)) * (-(-q)) * Scalar(-1) + (p * Scalar(1, 2)) * p * Scalar(-1);
  }
  CHECK(by_hand * LaurentH::h_power(m.ring(), 1) == m.constant(-1));
  CHECK(pair(m.alpha(), m.XH()) == m.constant(-1));
  for (int n : {1, 2})
    for (const auto& sig : signatures(n)) {
      FlatModel mm = build_model(n, sig);
      CAPTURE(n);
      CHECK(validate_model(mm).pass);
      CHECK(projector_checks(mm).pass);
      CHECK(reduced_bivector_checks(mm).pass);
    }
}

TEST_CASE("horizontal projection examples") {
  FlatModel m = build_model(1);
  CHECK(is_zero(m.horizontal_project(m.S())));
  CHECK(is_zero(m.horizontal_project(m.XH())));
  FieldMatrix B = m.reduced_bivector();
  for (const auto& row : B)
    for (const auto& e : row)
      if (!e.is_zero()) CHECK(e.slot(0).is_homogeneous());
}

TEST_CASE("schouten identity and flipped diagnostic") {
  for (int n : {1, 2})
    for (const auto& sig : signatures(n)) {
      FlatModel m = build_model(n, sig);
      CHECK(schouten_check(m).pass);
      CHECK_FALSE(schouten_check(m, true).pass);
    }
  // Lambda_P is constant, so its own Schouten bracket has no terms.
  FlatModel m = build_model(1);
  for (int a = 0; a < m.dim(); ++a)
    for (int b = 0; b < m.dim(); ++b) CHECK(m.constant(m.lambda()[a][b]).derivative(0).is_zero());
}

TEST_CASE("hessian decomposition values") {
  FlatModel m = build_model(2);
  HessianDecomposition hd = hessian_decompose_H(m);
  CHECK(hd.phi == m.constant(-2));
  CHECK(is_zero(hd.V_lift));
  // Oracle: Hess H(X_H, X_H) = |X_H|^2 = 2H for G = I, by explicit sum.
  LaurentH sq = m.zero();
  for (const auto& c : m.XH()) sq += c * c;
  CHECK(sq == m.H() * Scalar(2));
  CHECK(m.gram_pair(m.S(), m.S()) == m.H() * Scalar(1, 2));

  std::vector<int> opposite = {1, 1, 1, -1, -1, -1};
  CHECK(hessian_decompose_H(build_model(2, opposite)).phi == m.constant(2));
  FlatModel mixed = build_model(2, {-1, -1, 1, -1, 1, 1});
  CHECK_FALSE(mixed.admissible());
  CHECK_FALSE(hessian_decompose_H(mixed).phi.is_constant());
}

TEST_CASE("connection split and brackets") {
  for (int n : {1, 2})
    for (const auto& sig : signatures(n)) {
      FlatModel m = build_model(n, sig);
      CAPTURE(n);
      auto c = connection_split_check(m);
      CHECK_MESSAGE(c.pass, c.witness);
      auto b = bracket_checks(m);
      CHECK_MESSAGE(b.pass, b.witness);
    }
  FlatModel m = build_model(2);
  auto hor = horizontal_fields(m);
  CHECK(pair(m.ds(), lie_bracket(hor[0], hor[4])).is_zero());
  CHECK(covariant(m.S(), m.S()) == scale(m.S(), Scalar(1, 2)));
  CHECK(covariant(m.XH(), m.S()) == scale(m.XH(), Scalar(1, 2)));
}
