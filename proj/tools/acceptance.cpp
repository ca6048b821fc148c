#include <chrono>
#include <functional>
#include <iostream>

#include "redstar/closed_form.hpp"
#include "redstar/frame_checks.hpp"
#include "redstar/koszul.hpp"
#include "redstar/moyal.hpp"
#include "redstar/suites.hpp"
#include "redstar/symbols.hpp"

using namespace redstar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& what) {
    if (pass) detail = what;
    pass = false;
  }
  void require(const CheckResult& r) {
    if (!r.pass) fail(r.name + ": " + r.witness);
  }
};

Sampler sampler(const std::string& id) { return Sampler(case_seed(42, id)); }

std::vector<std::vector<int>> signatures(int n) {
  const std::size_t N = static_cast<std::size_t>(2 * n + 2);
  std::vector<int> definite(N, 1), opposite(N, 1), negative(N, -1);
  for (std::size_t a = N / 2; a < N; ++a) opposite[a] = -1;
  return {definite, opposite, negative};
}

Outcome associativity() {
  Outcome o;
  FlatModel m = build_model(2);
  Sampler s = sampler("associativity");
  for (int t = 0; t < 50; ++t) {
    NuSeries f = to_series(m, s.laurent(m, 4, 1, 2), 4), g = to_series(m, s.laurent(m, 4, 1, 2), 4),
             h = to_series(m, s.laurent(m, 4, 1, 2), 4);
    if (moyal(m, moyal(m, f, g), h) != moyal(m, f, moyal(m, g, h))) o.fail("triple " + std::to_string(t));
  }
  o.detail = o.pass ? "50 triples, n=2, degree <= 4, mod nu^5" : o.detail;
  return o;
}

Outcome strong_invariance() {
  Outcome o;
  FlatModel m = build_model(2);
  Sampler s = sampler("strong_invariance");
  for (int t = 0; t < 100; ++t) {
    NuSeries f = to_series(m, s.laurent(m, 4, 2, 3), 2);
    f[1] = s.laurent(m, 3, 1, 2);
    o.require(ad_H_check(m, f));
  }
  if (o.pass) o.detail = "100 random f";
  return o;
}

Outcome homotopy() {
  Outcome o;
  FlatModel m = build_model(2);
  Sampler s = sampler("homotopy");
  for (int t = 0; t < 50; ++t) {
    LaurentH f0 = s.even_laurent(m, 4, 2);
    if (koszul_classical(homotopy_h(f0)) + restrict_extend(f0) != f0) o.fail("classical, sample " + std::to_string(t));
    NuSeries f = to_series(m, s.even_laurent(m, 4, 2, 2), 4);
    f[1] = s.even_laurent(m, 2, 1, 2);
    f[2] = s.even_laurent(m, 2, 1, 2);
    if (koszul_quantum(m, quantum_homotopy(m, f)) + quantum_restriction(m, f) != f)
      o.fail("quantum, sample " + std::to_string(t));
    NuSeries psi = to_series(m, s.sigma_function(m, 2), 4);
    psi[2] = s.sigma_function(m, 1, 2);
    if (quantum_restriction(m, psi) != psi) o.fail("q-iota pr*, sample " + std::to_string(t));
    if (!quantum_homotopy(m, psi).is_zero()) o.fail("qh pr*, sample " + std::to_string(t));
  }
  if (o.pass) o.detail = "50 strict f (classical and mod nu^5), 50 psi";
  return o;
}

Outcome two_constructions() {
  Outcome o;
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s = sampler("two_constructions");
  for (int t = 0; t < 25; ++t) {
    NuSeries u = to_series(m, s.invariant_degree0(m, 2), 4), v = to_series(m, s.invariant_degree0(m, 2), 4);
    if (fast_reduced_product(m, g, u, v) != reduced_product(m, u, v)) o.fail("pair " + std::to_string(t));
  }
  if (o.pass) o.detail = "25 invariant pairs, mod nu^5";
  return o;
}

Outcome order_by_order() {
  Outcome o;
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s = sampler("order_by_order");
  for (int t = 0; t < 20; ++t) {
    LaurentH u = s.invariant_degree0(m, 2), v = s.invariant_degree0(m, 2);
    NuSeries su = to_series(m, u, 2), sv = to_series(m, v, 2);
    NuSeries red = reduced_product(m, su, sv);
    if (red[0] != u * v) o.fail("C_0^red, pair " + std::to_string(t));
    if (red[1] * Scalar(2) != m.poisson(u, v) * m.H()) o.fail("C_1^red, pair " + std::to_string(t));
    ReducedOperators op = extract_operators(m, su, sv, 2);
    if (op.c_red != op.c_hat) o.fail("C_2^red, pair " + std::to_string(t));
    o.require(second_order_check(m, g, u, v));
  }
  if (o.pass) o.detail = "20 pairs: C_0, C_1, C_2 = C^_2, second-order formula";
  return o;
}

Outcome weyl_naturality() {
  Outcome o;
  FlatModel m = build_model(2);
  Sampler s = sampler("weyl_naturality");
  std::vector<LaurentH> samples;
  for (int i = 0; i < 3; ++i) samples.push_back(s.invariant_degree0(m, 2, 2));
  for (int r = 0; r <= 4; ++r) o.require(weyl_type_check(m, r, samples));
  for (int r = 0; r <= 3; ++r) {
    LaurentH u = s.invariant_degree0(m, 1, 2), v = s.invariant_degree0(m, 1, 2);
    std::vector<LaurentH> ws;
    for (int i = 0; i <= r; ++i) ws.push_back(s.invariant_degree0(m, 1, 1));
    o.require(naturality_check(m, r, u, v, ws));
  }
  if (o.pass) o.detail = "parity r <= 4 on 3 samples, nested commutators r <= 3";
  return o;
}

Outcome naive_witness() {
  Outcome o;
  FlatModel m = build_model(2);
  Sampler s = sampler("naive_witness");
  AssociatorWitness w = find_naive_associator(m, s, 3, 20);
  if (!w.found) {
    o.fail("no witness in 20 triples");
    return o;
  }
  o.detail = "nonzero associator at nu^" + std::to_string(w.order);
  return o;
}

Outcome frame_geometry() {
  Outcome o;
  int models = 0;
  for (int n : {1, 2})
    for (const auto& sig : signatures(n)) {
      FlatModel m = build_model(n, sig);
      o.require(schouten_check(m));
      o.require(connection_split_check(m));
      o.require(bracket_checks(m));
      HessianDecomposition hd = hessian_decompose_H(m);
      if (m.gram_pair(m.S(), m.S()) != m.H() * Scalar(1, 2)) o.fail("(nabla_S dH)(S) != H/2");
      if (m.gram_pair(m.XH(), m.XH()) != -(hd.phi * m.H())) o.fail("(nabla_XH dH)(XH) != -phi H");
      ++models;
    }
  if (o.pass) o.detail = std::to_string(models) + " models, n in {1, 2}, 3 signatures each";
  return o;
}

Outcome closed_forms() {
  Outcome o;
  FlatModel m = build_model(2);
  GeometryScalars g = derive_scalars(m);
  Sampler s = sampler("closed_forms");
  for (int t = 0; t < 20; ++t) {
    LaurentH u = s.invariant_degree0(m, 2);
    NuSeries f = to_series(m, u.shift_hpow(t % 3) * m.H(), 4);
    o.require(koszul_difference_check(m, f));
    o.require(closed_restriction_check(m, f));
    for (int k = 0; k <= 4; ++k)
      if (h_on_Hk(m, u, k) != homotopy_h(u.shift_hpow(k))) o.fail("h on H^-k, k=" + std::to_string(k));
    o.require(delta_hk_pattern_check(m, g, u, 3));
  }
  if (o.pass) o.detail = "20 invariant samples: kappa_q - d, h on H^-k (k <= 4), k-pattern (k <= 3), q-iota";
  return o;
}

Outcome symbol_calculus() {
  Outcome o;
  Sampler s = sampler("symbol_calculus");
  const Scalar kappas[] = {Scalar(0), Scalar(1, 4), Scalar(1, 2), Scalar(1)};
  for (int t = 0; t < 20; ++t) {
    ChartModel c = random_chart(s, 4, 2, 2);
    Curvature cv = curvature_and_ricci(c);
    MultiPoly f = random_symbol(s, c, 3, 2, 4);
    for (const Scalar& k : kappas) {
      o.require(adjoint_relation_check(c, f, k));
      o.require(kappa_riccian_check(c, cv.ric, k));
    }
    o.require(symmetric_riccian_check(c, cv.ric));
  }
  if (o.pass) o.detail = "20 connections in dimension 4, kappa in {0, 1/4, 1/2, 1}";
  return o;
}

Outcome bimodule() {
  Outcome o;
  FlatModel m = build_model(2);
  Sampler s = sampler("bimodule");
  for (int t = 0; t < 20; ++t) {
    NuSeries psi = to_series(m, s.sigma_function(m, 1, 2), 3);
    NuSeries f = to_series(m, s.even_laurent(m, 2, 1, 2), 3), g = to_series(m, s.even_laurent(m, 2, 1, 2), 3);
    NuSeries u = to_series(m, s.invariant_degree0(m, 1, 2), 3), v = to_series(m, s.invariant_degree0(m, 1, 2), 3);
    if (left_action(m, moyal(m, f, g), psi) != left_action(m, f, left_action(m, g, psi)))
      o.fail("left law, triple " + std::to_string(t));
    if (right_action(m, psi, reduced_product(m, u, v)) != right_action(m, right_action(m, psi, u), v))
      o.fail("right law, triple " + std::to_string(t));
  }
  if (o.pass) o.detail = "20 triples, mod nu^4";
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  cfg.suite = "all";
  cfg.jobs = 1;
  std::string first = to_json(run_suite(cfg)).dump(2);
  cfg.jobs = 3;
  std::string second = to_json(run_suite(cfg)).dump(2);
  if (first != second) o.fail("reports differ between runs");
  cfg.seed = 7;
  cfg.suite = "moyal";
  std::string moyal7 = to_json(run_suite(cfg)).dump(2);
  if (moyal7 != to_json(run_suite(cfg)).dump(2)) o.fail("seed 7 reports differ");
  if (moyal7.find("\"pass\": true") == std::string::npos) o.fail("seed 7 moyal report empty");
  if (o.pass) o.detail = "suite all twice (1 and 3 workers), " + std::to_string(first.size()) + " bytes identical";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double target;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Moyal associativity", 60, associativity},
      {2, "strong invariance", 0, strong_invariance},
      {3, "homotopy identities", 0, homotopy},
      {4, "two-construction agreement", 120, two_constructions},
      {5, "order-by-order theorems", 0, order_by_order},
      {6, "Weyl type and naturality", 0, weyl_naturality},
      {7, "naive associator witness", 0, naive_witness},
      {8, "frame geometry", 0, frame_geometry},
      {9, "closed-form lemmas", 0, closed_forms},
      {10, "symbol calculus", 60, symbol_calculus},
      {11, "bimodule laws", 0, bimodule},
      {12, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.target > 0 && secs >= c.target)
      o.fail("took " + std::to_string(secs) + " s, target " + std::to_string(static_cast<int>(c.target)) + " s");
    if (!o.pass) ++failed;
    std::printf("criterion %2d %-28s %s  %.1fs  %s\n", c.id, c.name.c_str(), o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
