#include <chrono>
#include <functional>

#include "doctest.h"
#include "redstar/moyal.hpp"
#include "redstar/sampling.hpp"

using namespace redstar;

namespace {

// Plain sum over every index tuple, no grouping or caching.
LaurentH brute_c_r(const FlatModel& m, const LaurentH& f, const LaurentH& g, int r) {
  const int N = m.dim();
  LaurentH out = m.zero();
  std::vector<int> is(static_cast<std::size_t>(r)), js(static_cast<std::size_t>(r));
  std::function<void(int)> rec = [&](int k) {
    if (k == r) {
      Scalar w = 1;
      for (int t = 0; t < r; ++t) w *= m.lambda()[is[t]][js[t]];
      if (w == 0) return;
      LaurentH df = f, dg = g;
      for (int t = 0; t < r; ++t) {
        df = df.derivative(is[t]);
        dg = dg.derivative(js[t]);
      }
      out += df * dg * w;
      return;
    }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        is[static_cast<std::size_t>(k)] = i;
        js[static_cast<std::size_t>(k)] = j;
        rec(k + 1);
      }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("c_r examples") {
  FlatModel m = build_model(2);
  CHECK(c_r(m, m.coord(0), m.coord(3), 1) == m.constant(1));
  // Oracle: sum_{ab} (Lambda^{ab})^2 for G = I.
  Scalar sq = 0;
  for (const auto& row : m.lambda())
    for (const auto& x : row) sq += x * x;
  CHECK(sq == 6);
  CHECK(c_r(m, m.H(), m.H(), 2) == m.constant(sq));
  Sampler s(3);
  for (int t = 0; t < 5; ++t) CHECK(c_r(m, m.H(), s.laurent(m, 4, 2), 3).is_zero());
}

TEST_CASE("c_r agrees with brute-force index sum") {
  FlatModel m = build_model(1, {1, -1, 1, 1});
  Sampler s(5);
  for (int t = 0; t < 4; ++t) {
    LaurentH f = s.laurent(m, 3, 1, 2), g = s.laurent(m, 3, 1, 2);
    for (int r = 0; r <= 3; ++r) CHECK(c_r(m, f, g, r) == brute_c_r(m, f, g, r));
  }
}

TEST_CASE("moyal examples") {
  FlatModel m = build_model(2);
  const int order = 4;
  NuSeries qp = moyal(m, to_series(m, m.coord(0), order), to_series(m, m.coord(3), order));
  CHECK(qp[0] == m.coord(0) * m.coord(3));
  CHECK(qp[1] == m.constant(Scalar(1, 2)));
  for (int r = 2; r <= order; ++r) CHECK(qp[r].is_zero());
  NuSeries hh = moyal(m, to_series(m, m.H(), order), to_series(m, m.H(), order));
  CHECK(hh[0] == m.H() * m.H());
  CHECK(hh[1].is_zero());
  CHECK(hh[2] == m.constant(Scalar(3, 4)));  // (n+1)/4 for n = 2
  Sampler s(7);
  NuSeries f = to_series(m, s.laurent(m, 4, 2), order);
  CHECK(moyal(m, to_series(m, m.constant(1), order), f) == f);
  CHECK(moyal(m, f, to_series(m, m.constant(1), order)) == f);
  CHECK_THROWS_AS(moyal(m, f, NuSeries(m.ring(), 2)), InputError);
}

TEST_CASE("strong invariance") {
  FlatModel m = build_model(2);
  CHECK(ad_H_check(m, to_series(m, m.coord(0), 2)).pass);
  CHECK(m.lie_XH(LaurentH::h_power(m.ring(), 1)).is_zero());
  CHECK(ad_H_check(m, to_series(m, LaurentH::h_power(m.ring(), 1), 2)).pass);
}

TEST_CASE("nu-Euler derivation and parity") {
  FlatModel m = build_model(2);
  const int order = 4;
  NuSeries h = to_series(m, m.H(), order);
  NuSeries hh = moyal(m, h, h);
  NuSeries e = nu_euler(hh);
  CHECK(e[0] == m.H() * m.H() * Scalar(2));
  CHECK(e[2] == m.constant(Scalar(3, 2)));
  CHECK(nu_euler_check(m, h, h).pass);
  Sampler s(9);
  for (int t = 0; t < 4; ++t) {
    NuSeries f = to_series(m, s.laurent(m, 3, 1), 3), g = to_series(m, s.laurent(m, 3, 1), 3);
    f[1] = s.laurent(m, 2, 1);
    CHECK(nu_euler_check(m, f, g).pass);
    for (int r = 1; r <= 3; ++r) CHECK(parity_check(m, f[0], g[0], r).pass);
  }
}

TEST_CASE("invariant commutators carry only odd powers") {
  FlatModel m = build_model(2);
  Sampler s(21);
  for (int t = 0; t < 3; ++t) {
    LaurentH u = s.invariant_degree0(m, 2), v = s.invariant_degree0(m, 2);
    REQUIRE(is_invariant_degree0(m, u));
    NuSeries fu = to_series(m, u, 4), fv = to_series(m, v, 4);
    NuSeries comm = moyal(m, fu, fv) - moyal(m, fv, fu);
    for (int r = 0; r <= 4; r += 2) CHECK(comm[r].is_zero());
    for (int r = 0; r <= 3; ++r) {
      LaurentH scaled = c_r(m, u, v, r);
      for (int k = 0; k < r; ++k) scaled = scaled * m.H();
      CHECK(is_invariant_degree0(m, scaled));
    }
  }
}

TEST_CASE("associativity on random triples") {
  FlatModel m = build_model(2);
  Sampler s(42);
  const int order = 4;
  auto start = std::chrono::steady_clock::now();
  for (int t = 0; t < 5; ++t) {
    NuSeries f = to_series(m, s.laurent(m, 4, 1, 2), order);
    NuSeries g = to_series(m, s.laurent(m, 4, 1, 2), order);
    NuSeries h = to_series(m, s.laurent(m, 4, 1, 2), order);
    CHECK(moyal(m, moyal(m, f, g), h) == moyal(m, f, moyal(m, g, h)));
  }
  MESSAGE("5 triples in " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
}
