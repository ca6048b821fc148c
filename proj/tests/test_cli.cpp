#include "doctest.h"
#include "redstar/expr.hpp"
#include "redstar/koszul.hpp"
#include "redstar/moyal.hpp"
#include "redstar/suites.hpp"

using namespace redstar;

TEST_CASE("canonical JSON encodings") {
  MultiPoly p = MultiPoly::monomial(2, std::vector<int>{2, 1}, make_scalar(-3, 4)) + MultiPoly::constant(2, Scalar(5));
  Json j = to_json(p);
  // Terms in descending graded-lex order, coefficients as strings.
  CHECK(j.dump() == R"([{"den":"4","exp":[2,1],"num":"-3"},{"den":"1","exp":[0,0],"num":"5"}])");
  CHECK(multipoly_from_json(j, 2) == p);
  CHECK(to_json(MultiPoly(3)).dump() == "[]");

  FlatModel m = build_model(1);
  Sampler s(11);
  for (int t = 0; t < 10; ++t) {
    LaurentH f = s.laurent(m, 4, 2, 3);
    CHECK(laurent_from_json(to_json(f), m.ring()) == f);
    NuSeries g = to_series(m, f, 2);
    g[2] = s.laurent(m, 2, 1, 2);
    CHECK(series_from_json(to_json(g), m.ring(), 2) == g);
  }
  Json hinv = to_json(LaurentH::h_power(m.ring(), 1));
  CHECK(hinv.size() == 1);
  CHECK(hinv[0]["hpow"] == 1);
  CHECK(to_json(m).dump() == R"({"n":1,"signature":[1,1,1,1]})");
  CHECK(model_from_json(to_json(build_model(2, {1, 1, 1, -1, -1, -1}))).signature()[5] == -1);
  CheckResult r("x");
  r.fail("w");
  CHECK(to_json(r).dump() == R"({"check":"x","pass":false,"witness":"w"})");

  CHECK_THROWS_AS(multipoly_from_json(Json::parse(R"([{"exp":[1],"num":"1","den":"1"}])"), 2), InputError);
  CHECK_THROWS_AS(multipoly_from_json(Json::parse(R"([{"exp":[1,0],"num":"1","den":"0"}])"), 2), InputError);
}

TEST_CASE("expression grammar") {
  FlatModel m = build_model(2);
  auto q = [&](int i) { return m.coord(i); };
  auto p = [&](int i) { return m.coord(3 + i); };
  LaurentH hinv = LaurentH::h_power(m.ring(), 1);
  // Oracles by hand: z0 zb1 = (q0 + i p0)(q1 - i p1).
  CHECK(parse_function(m, "re(z0 z̄1)") == q(0) * q(1) + p(0) * p(1));
  CHECK(parse_function(m, "re(z0 zb1)") == q(0) * q(1) + p(0) * p(1));
  CHECK(parse_function(m, "im(z0 zb1)") == p(0) * q(1) - q(0) * p(1));
  CHECK(parse_function(m, "re(z0 z̄1)/H") == (q(0) * q(1) + p(0) * p(1)) * hinv);
  CHECK(parse_function(m, "z1 zb1") == q(1) * q(1) + p(1) * p(1));
  CHECK(parse_function(m, "H") == m.H());
  CHECK(parse_function(m, "2 H - q0^2 - q1^2 - q2^2 - p0^2 - p1^2") == p(2) * p(2));
  CHECK(parse_function(m, "3/4 q0") == q(0) * make_scalar(3, 4));
  CHECK(parse_function(m, "-q0^2") == -(q(0) * q(0)));
  CHECK(parse_function(m, "q1 H^-2") == q(1) * LaurentH::h_power(m.ring(), 2));
  CHECK(parse_function(m, "q1/(2 H^2)") == q(1) * LaurentH::h_power(m.ring(), 2) * make_scalar(1, 2));
  CHECK(parse_function(m, "q1/H^-1") == q(1) * m.H());
  CHECK(parse_function(m, "i*i + 1").is_zero());
  CHECK(parse_function(m, "(q0 + p0)(q0 - p0)") == q(0) * q(0) - p(0) * p(0));

  CHECK_THROWS_AS(parse_function(m, "z0"), InputError);
  CHECK_THROWS_AS(parse_function(m, "q0/q1"), InputError);
  CHECK_THROWS_AS(parse_function(m, "1/0"), InputError);
  CHECK_THROWS_AS(parse_function(m, "q3"), InputError);
  CHECK_THROWS_AS(parse_function(m, "q0 +"), InputError);
  CHECK_THROWS_AS(parse_function(m, "re(q0"), InputError);
  CHECK_THROWS_AS(parse_function(m, "x1"), InputError);
}

TEST_CASE("invariance and degree certifier") {
  FlatModel m = build_model(2);
  CHECK_NOTHROW(certify_reduced(m, parse_function(m, "re(z0 z̄1)/H + (im(z1 zb2))^2/H^2 + 5"), "u"));
  CHECK_NOTHROW(parse_reduced(m, "z2 zb2 / H", "u"));
  auto message = [&](const std::string& text) {
    try {
      parse_reduced(m, text, "u");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("q0^2/H").find("not X_H-invariant") != std::string::npos);
  CHECK(message("q0^2/H").find("H^-1 coefficient") != std::string::npos);
  CHECK(message("re(z0 z̄1)").find("S-degree") != std::string::npos);
  CHECK(message("1 + q0 p1/H^2").find("H^-2") != std::string::npos);
  // Opposite signature: z0 zb1 is no longer invariant, z0 z1 is.
  FlatModel mo = build_model(2, {1, 1, 1, -1, -1, -1});
  CHECK_THROWS_AS(parse_reduced(mo, "re(z0 zb1)/H", "u"), InputError);
  CHECK_NOTHROW(parse_reduced(mo, "re(z0 z1)/H", "u"));
}

TEST_CASE("run configuration") {
  CHECK(parse_signature("definite", 1) == std::vector<int>{1, 1, 1, 1});
  CHECK(parse_signature("opposite", 1) == std::vector<int>{1, 1, -1, -1});
  CHECK(parse_signature("1,-1,+1,-", 1) == std::vector<int>{1, -1, 1, -1});
  CHECK_THROWS_AS(parse_signature("1,1", 1), InputError);
  CHECK_THROWS_AS(parse_signature("1,2,1,1", 1), InputError);
  RunConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  CHECK(model_for(cfg).n() == 2);
  CHECK(model_for(cfg).signature() == std::vector<int>(6, 1));
  using Edit = void (*)(RunConfig&);
  for (Edit bad : std::initializer_list<Edit>{[](RunConfig& c) { c.n = 0; }, [](RunConfig& c) { c.order = -1; }, [](RunConfig& c) { c.degree = 0; },
                   [](RunConfig& c) { c.suite = "x"; }, [](RunConfig& c) { c.signature = {1}; }}) {
    RunConfig c;
    bad(c);
    CHECK_THROWS_AS(validate_config(c), InputError);
  }
  CHECK(case_seed(42, "a") == case_seed(42, "a"));
  CHECK(case_seed(42, "a") != case_seed(42, "b"));
  CHECK(case_seed(42, "a") != case_seed(43, "a"));
}

TEST_CASE("suite reports") {
  RunConfig cfg;
  cfg.n = 1;
  cfg.suite = "frame";
  SuiteReport r = run_suite(cfg);
  CHECK(r.pass());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("dimension below paper hypothesis") != std::string::npos);
  for (std::size_t i = 1; i < r.cases.size(); ++i) CHECK(r.cases[i - 1].id < r.cases[i].id);
  cfg.n = 2;
  SuiteReport r2 = run_suite(cfg);
  CHECK(r2.pass());
  CHECK(r2.warnings.empty());
  CHECK(r2.cases.size() == r.cases.size() + 1);

  cfg.suite = "moyal";
  cfg.order = 2;
  cfg.degree = 2;
  Json a = to_json(run_suite(cfg));
  cfg.jobs = 3;
  Json b = to_json(run_suite(cfg));
  CHECK(a.dump() == b.dump());
  CHECK(a["pass"] == true);
  CHECK(a["failures"].empty());
  cfg.seed = 43;
  CHECK(to_json(run_suite(cfg)).dump() == a.dump());  // passing reports carry no inputs

  cfg.order = 0;
  CHECK(run_suite(cfg).pass());
  cfg.signature = {1, -1, 1, 1, 1, -1};
  cfg.suite = "closedform";
  SuiteReport mixed = run_suite(cfg);
  CHECK(mixed.cases.empty());
  CHECK(mixed.warnings.size() == 1);
}
