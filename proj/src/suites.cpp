#include "redstar/suites.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "redstar/closed_form.hpp"
#include "redstar/frame_checks.hpp"
#include "redstar/koszul.hpp"
#include "redstar/moyal.hpp"
#include "redstar/symbols.hpp"

namespace redstar {

namespace {

using CaseFn = std::function<CheckResult(Sampler&, Json&)>;

struct Case {
  std::string id;
  CaseFn fn;
};

CheckResult expect(const std::string& name, bool ok, const std::string& witness) {
  CheckResult r(name);
  if (!ok) r.fail(witness);
  return r;
}

std::string show(const FlatModel& m, const LaurentH& f) { return f.to_string(m.variable_names()); }

int hpow_bound(const RunConfig& cfg) { return std::max(1, cfg.degree / 2); }

// ---------------------------------------------------------------- frame

std::vector<Case> frame_cases(const FlatModel& m, const RunConfig&, std::vector<std::string>& warnings) {
  std::vector<Case> cs;
  cs.push_back({"validate_model", [&m](Sampler&, Json&) { return validate_model(m); }});
  cs.push_back({"projector", [&m](Sampler&, Json&) { return projector_checks(m); }});
  cs.push_back({"reduced_bivector", [&m](Sampler&, Json&) { return reduced_bivector_checks(m); }});
  cs.push_back({"schouten", [&m](Sampler&, Json&) { return schouten_check(m); }});
  cs.push_back({"schouten_flipped_fails", [&m](Sampler&, Json&) {
                  return expect("schouten_flipped_fails", !schouten_check(m, true).pass,
                                "flipped orientation still satisfies the identity");
                }});
  cs.push_back({"hessian_blocks", [&m](Sampler&, Json&) {
                  CheckResult r("hessian_blocks");
                  HessianDecomposition hd = hessian_decompose_H(m);
                  LaurentH ss = m.gram_pair(m.S(), m.S());
                  if (ss != m.H() * Scalar(1, 2)) r.fail("(nabla_S dH)(S) = " + show(m, ss));
                  LaurentH xx = m.gram_pair(m.XH(), m.XH());
                  if (xx != -(hd.phi * m.H())) r.fail("(nabla_XH dH)(XH) + phi H = " + show(m, xx + hd.phi * m.H()));
                  if (m.admissible() && !hd.phi.is_constant()) r.fail("phi not constant: " + show(m, hd.phi));
                  return r;
                }});
  cs.push_back({"connection_split", [&m](Sampler&, Json&) { return connection_split_check(m); }});
  cs.push_back({"brackets", [&m](Sampler&, Json&) { return bracket_checks(m); }});
  if (m.n() < 2) {
    warnings.push_back("dimension below paper hypothesis: dim M = 2n < 4, Ricci-type predicate skipped");
    return cs;
  }
  cs.push_back({"ricci_type", [&m](Sampler& s, Json& in) {
                  CheckResult r("ricci_type");
                  const int d = 2 * m.n();
                  const Matrix omega = standard_omega(d);
                  const Matrix winv = inverse(omega);
                  auto at = [d](int i, int j) { return static_cast<std::size_t>(i * d + j); };
                  std::vector<MultiPoly> ric(static_cast<std::size_t>(d * d), MultiPoly(1));
                  for (int i = 0; i < d; ++i)
                    for (int j = i; j < d; ++j) {
                      MultiPoly v = MultiPoly::constant(1, Scalar(s.uniform(-3, 3)));
                      ric[at(i, j)] = v;
                      ric[at(j, i)] = v;
                    }
                  in["ric"] = Json::array();
                  for (const auto& v : ric) in["ric"].push_back(to_string(v.constant_term()));
                  std::vector<MultiPoly> rho(ric.size(), MultiPoly(1));
                  for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                      for (int i = 0; i < d; ++i)
                        if (winv[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] != 0)
                          rho[at(a, b)] += ric[at(i, b)] * winv[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
                  std::vector<MultiPoly> R = ricci_type_curvature(rho, omega);
                  if (!ricci_type_predicate(R, ric, omega)) r.fail("manufactured curvature rejected");
                  bool nonzero = std::any_of(ric.begin(), ric.end(), [](const MultiPoly& v) { return !v.is_zero(); });
                  std::vector<MultiPoly> twice;
                  for (const auto& v : ric) twice.push_back(v * Scalar(2));
                  if (nonzero && ricci_type_predicate(R, twice, omega)) r.fail("curvature accepted with 2 Ric");
                  for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k) {
                      MultiPoly t(1);
                      for (int a = 0; a < d; ++a) t += R[static_cast<std::size_t>(((a * d + k) * d + a) * d + j)];
                      MultiPoly want = ric[at(j, k)] * Scalar(-(d + 2), d + 1);
                      if (t != want) r.fail("trace (" + std::to_string(j) + "," + std::to_string(k) + ")");
                    }
                  return r;
                }});
  return cs;
}

// ---------------------------------------------------------------- moyal

std::vector<Case> moyal_cases(const FlatModel& m, const RunConfig& cfg) {
  std::vector<Case> cs;
  const int order = cfg.order, deg = cfg.degree;
  cs.push_back({"unit", [&m, order, deg](Sampler& s, Json& in) {
                  NuSeries f = to_series(m, s.laurent(m, deg, 1, 3), order), one = to_series(m, m.constant(1), order);
                  in["f"] = to_json(f);
                  return expect("unit", moyal(m, one, f) == f && moyal(m, f, one) == f, "1 * f or f * 1 differs from f");
                }});
  cs.push_back({"first_order_poisson", [&m, deg](Sampler& s, Json& in) {
                  LaurentH f = s.laurent(m, deg, 1, 3), g = s.laurent(m, deg, 1, 3);
                  in["f"] = to_json(f);
                  in["g"] = to_json(g);
                  LaurentH d = c_r(m, f, g, 1) - m.poisson(f, g);
                  return expect("first_order_poisson", d.is_zero(), "C_1 - {f,g} = " + show(m, d));
                }});
  for (int t = 0; t < 4; ++t) {
    cs.push_back({"strong_invariance_" + std::to_string(t), [&m, order, deg](Sampler& s, Json& in) {
                    NuSeries f = to_series(m, s.laurent(m, deg, 2, 3), order);
                    if (order >= 1) f[1] = s.laurent(m, deg, 1, 2);
                    in["f"] = to_json(f);
                    return ad_H_check(m, f);
                  }});
    cs.push_back({"nu_euler_" + std::to_string(t), [&m, order, deg](Sampler& s, Json& in) {
                    NuSeries f = to_series(m, s.laurent(m, deg, 1, 2), order), g = to_series(m, s.laurent(m, deg, 1, 2), order);
                    if (order >= 1) f[1] = s.laurent(m, deg, 1, 2);
                    in["f"] = to_json(f);
                    in["g"] = to_json(g);
                    return nu_euler_check(m, f, g);
                  }});
    cs.push_back({"parity_" + std::to_string(t), [&m, order, deg](Sampler& s, Json& in) {
                    LaurentH f = s.laurent(m, deg, 1, 3), g = s.laurent(m, deg, 1, 3);
                    in["f"] = to_json(f);
                    in["g"] = to_json(g);
                    CheckResult r("parity");
                    for (int k = 0; k <= std::max(order, 1); ++k) r.merge(parity_check(m, f, g, k));
                    return r;
                  }});
  }
  for (int t = 0; t < 3; ++t)
    cs.push_back({"associativity_" + std::to_string(t), [&m, order, deg](Sampler& s, Json& in) {
                    NuSeries f = to_series(m, s.laurent(m, deg, 1, 2), order);
                    NuSeries g = to_series(m, s.laurent(m, deg, 1, 2), order);
                    NuSeries h = to_series(m, s.laurent(m, deg, 1, 2), order);
                    in["f"] = to_json(f);
                    in["g"] = to_json(g);
                    in["h"] = to_json(h);
                    NuSeries d = moyal(m, moyal(m, f, g), h) - moyal(m, f, moyal(m, g, h));
                    return expect("associativity", d.is_zero(),
                                  d.is_zero() ? "" : "associator at nu^" + std::to_string(d.valuation()) + ": " +
                                                         show(m, d[d.valuation()]));
                  }});
  return cs;
}

// ---------------------------------------------------------------- koszul

std::vector<Case> koszul_cases(const FlatModel& m, const RunConfig& cfg) {
  std::vector<Case> cs;
  const int order = cfg.order, deg = cfg.degree - cfg.degree % 2, hp = hpow_bound(cfg);
  const int edeg = std::max(2, deg);
  for (int t = 0; t < 3; ++t) {
    const std::string k = std::to_string(t);
    cs.push_back({"classical_homotopy_" + k, [&m, edeg](Sampler& s, Json& in) {
                    LaurentH f = s.even_laurent(m, edeg, 2);
                    in["f"] = to_json(f);
                    LaurentH d = koszul_classical(homotopy_h(f)) + restrict_extend(f) - f;
                    return expect("classical_homotopy", d.is_zero(), "d h f + pr* iota* f - f = " + show(m, d));
                  }});
    cs.push_back({"quantum_homotopy_" + k, [&m, order, edeg](Sampler& s, Json& in) {
                    NuSeries f = to_series(m, s.even_laurent(m, edeg, 2, 2), order);
                    if (order >= 2) f[2] = s.even_laurent(m, 2, 1, 2);
                    in["f"] = to_json(f);
                    NuSeries qi = quantum_restriction(m, f);
                    NuSeries d = koszul_quantum(m, quantum_homotopy(m, f)) + qi - f;
                    CheckResult r("quantum_homotopy");
                    if (!d.is_zero()) r.fail("kappa_q qh f + q-iota f - f at nu^" + std::to_string(d.valuation()));
                    if (!is_sigma_function(qi)) r.fail("q-iota f is not of S-degree 0");
                    return r;
                  }});
    cs.push_back({"pullback_" + k, [&m, order, hp](Sampler& s, Json& in) {
                    NuSeries psi = to_series(m, s.sigma_function(m, hp), order);
                    in["psi"] = to_json(psi);
                    CheckResult r("pullback");
                    if (quantum_restriction(m, psi) != psi) r.fail("q-iota pr* psi != psi");
                    if (!quantum_homotopy(m, psi).is_zero()) r.fail("qh pr* psi != 0");
                    return r;
                  }});
    cs.push_back({"low_orders_" + k, [&m, order, hp](Sampler& s, Json& in) {
                    const int o = std::min(order, 2);
                    LaurentH u = s.invariant_degree0(m, hp), v = s.invariant_degree0(m, hp);
                    in["u"] = to_json(u);
                    in["v"] = to_json(v);
                    NuSeries red = reduced_product(m, to_series(m, u, o), to_series(m, v, o));
                    CheckResult r("low_orders");
                    if (red[0] != u * v) r.fail("C_0^red != uv");
                    if (o >= 1 && red[1] * Scalar(2) != m.poisson(u, v) * m.H()) r.fail("C_1^red != H {u,v}");
                    if (o >= 2 && red[2] * Scalar(8) != c_hat(m, u, v, 2)) r.fail("C_2^red != C^_2");
                    return r;
                  }});
    cs.push_back({"bimodule_" + k, [&m, order, edeg](Sampler& s, Json& in) {
                    const int o = std::min(order, 3);
                    NuSeries psi = to_series(m, s.sigma_function(m, 1, 2), o);
                    NuSeries f = to_series(m, s.even_laurent(m, std::min(edeg, 2), 1, 2), o);
                    NuSeries g = to_series(m, s.even_laurent(m, std::min(edeg, 2), 1, 2), o);
                    NuSeries u = to_series(m, s.invariant_degree0(m, 1, 2), o), v = to_series(m, s.invariant_degree0(m, 1, 2), o);
                    in["psi"] = to_json(psi);
                    in["f"] = to_json(f);
                    in["g"] = to_json(g);
                    in["u"] = to_json(u);
                    in["v"] = to_json(v);
                    CheckResult r("bimodule");
                    if (left_action(m, moyal(m, f, g), psi) != left_action(m, f, left_action(m, g, psi)))
                      r.fail("(f * g) . psi != f . (g . psi)");
                    if (right_action(m, psi, reduced_product(m, u, v)) != right_action(m, right_action(m, psi, u), v))
                      r.fail("psi . (u *red v) != (psi . u) . v");
                    return r;
                  }});
  }
  cs.push_back({"weyl_type", [&m, order](Sampler& s, Json& in) {
                  std::vector<LaurentH> samples;
                  for (int i = 0; i < 3; ++i) samples.push_back(s.invariant_degree0(m, 1, 2));
                  in["samples"] = Json::array();
                  for (const auto& u : samples) in["samples"].push_back(to_json(u));
                  CheckResult r("weyl_type");
                  for (int k = 0; k <= std::min(order, 4); ++k) r.merge(weyl_type_check(m, k, samples));
                  return r;
                }});
  for (int k = 0; k <= std::min(order, 3); ++k)
    cs.push_back({"naturality_r" + std::to_string(k), [&m, k](Sampler& s, Json& in) {
                    LaurentH u = s.invariant_degree0(m, 1, 2), v = s.invariant_degree0(m, 1, 2);
                    std::vector<LaurentH> ws;
                    for (int i = 0; i <= k; ++i) ws.push_back(s.invariant_degree0(m, 1, 1));
                    in["u"] = to_json(u);
                    in["v"] = to_json(v);
                    return naturality_check(m, k, u, v, ws);
                  }});
  cs.push_back({"naive_associator_witness", [&m](Sampler& s, Json& in) {
                  AssociatorWitness w = find_naive_associator(m, s, 3, 10);
                  if (w.found) {
                    in["u"] = to_json(w.u);
                    in["v"] = to_json(w.v);
                    in["w"] = to_json(w.w);
                    in["order"] = w.order;
                    in["associator"] = to_json(w.associator);
                  }
                  return expect("naive_associator_witness", w.found, "no nonzero associator at order <= 3 in 10 triples");
                }});
  return cs;
}

// ---------------------------------------------------------------- closed form

std::vector<Case> closedform_cases(const FlatModel& m, const RunConfig& cfg, std::vector<std::string>& warnings) {
  std::vector<Case> cs;
  if (!m.admissible()) {
    warnings.push_back("signature mixes equal and opposite (q, p) pairs: phi is not constant, closed forms skipped");
    return cs;
  }
  auto g = std::make_shared<GeometryScalars>(derive_scalars(m));
  const int order = cfg.order, hp = hpow_bound(cfg), n = m.n();
  cs.push_back({"derived_scalars", [&m, g, n](Sampler&, Json& in) {
                  in["phi"] = to_string(g->phi);
                  in["tr_rho2"] = to_string(g->tr_rho2);
                  in["f"] = to_string(g->f);
                  in["K"] = to_string(g->K);
                  CheckResult r("derived_scalars");
                  // Lambda G Lambda^T = eps G, so Delta(H^-1) = eps (2 - 2n) H^-2.
                  const int eps = m.signature()[0] == m.signature()[static_cast<std::size_t>(n + 1)] ? 1 : -1;
                  if (g->phi != Scalar(-2 * eps)) r.fail("phi = " + to_string(g->phi));
                  if (g->f != g->phi * make_scalar((n + 1) * (2 * n + 1), 4)) r.fail("f = " + to_string(g->f));
                  if (g->tr_rho2 != Scalar(-2 * eps * n * (n + 1) * (n + 1))) r.fail("tr rho^2 = " + to_string(g->tr_rho2));
                  LaurentH d = delta_op(m, LaurentH::h_power(m.ring(), 1));
                  if (d != LaurentH::h_power(m.ring(), 2) * Scalar(eps * (2 - 2 * n)))
                    r.fail("Delta(H^-1) = " + show(m, d));
                  return r;
                }});
  for (int t = 0; t < 3; ++t) {
    const std::string k = std::to_string(t);
    cs.push_back({"koszul_lemmas_" + k, [&m, order, hp, t](Sampler& s, Json& in) {
                    LaurentH u = s.invariant_degree0(m, hp);
                    NuSeries f = to_series(m, u.shift_hpow(t % 3) * m.H(), std::max(order, 2));
                    in["f"] = to_json(f);
                    CheckResult r("koszul_lemmas");
                    r.merge(koszul_difference_check(m, f));
                    r.merge(closed_restriction_check(m, f));
                    return r;
                  }});
    cs.push_back({"h_on_Hk_" + k, [&m, hp](Sampler& s, Json& in) {
                    LaurentH u = s.invariant_degree0(m, hp);
                    in["u"] = to_json(u);
                    CheckResult r("h_on_Hk");
                    for (int j = 0; j <= 4; ++j)
                      if (h_on_Hk(m, u, j) != homotopy_h(u.shift_hpow(j))) r.fail("k=" + std::to_string(j));
                    return r;
                  }});
    cs.push_back({"delta_hk_pattern_" + k, [&m, g, hp](Sampler& s, Json& in) {
                    LaurentH u = s.invariant_degree0(m, hp);
                    in["u"] = to_json(u);
                    return delta_hk_pattern_check(m, *g, u, 3);
                  }});
    cs.push_back({"delta_explicit_" + k, [&m, g, hp, t](Sampler& s, Json& in) {
                    LaurentH u = s.invariant_degree0(m, hp);
                    LaurentH f = t == 0 ? u : t == 1 ? m.H() * u : u.shift_hpow(2);
                    in["f"] = to_json(f);
                    return delta_explicit_check(m, *g, f);
                  }});
    cs.push_back({"second_order_" + k, [&m, g, hp](Sampler& s, Json& in) {
                    LaurentH u = s.invariant_degree0(m, hp), v = s.invariant_degree0(m, hp);
                    in["u"] = to_json(u);
                    in["v"] = to_json(v);
                    CheckResult r("second_order");
                    r.merge(second_order_check(m, *g, u, v));
                    r.merge(pullback_hessian_table_check(m, *g, u));
                    return r;
                  }});
  }
  for (int t = 0; t < 2; ++t)
    cs.push_back({"fast_vs_direct_" + std::to_string(t), [&m, g, order, hp](Sampler& s, Json& in) {
                    NuSeries u = to_series(m, s.invariant_degree0(m, hp), order);
                    NuSeries v = to_series(m, s.invariant_degree0(m, hp), order);
                    in["u"] = to_json(u);
                    in["v"] = to_json(v);
                    NuSeries d = fast_reduced_product(m, *g, u, v) - reduced_product(m, u, v);
                    return expect("fast_vs_direct", d.is_zero(),
                                  d.is_zero() ? "" : "nu^" + std::to_string(d.valuation()) + ": " + show(m, d[d.valuation()]));
                  }});
  return cs;
}

// ---------------------------------------------------------------- symbols

std::vector<Case> symbol_cases() {
  std::vector<Case> cs;
  for (int t = 0; t < 3; ++t) {
    const std::string k = std::to_string(t);
    cs.push_back({"chart_" + k, [](Sampler& s, Json&) {
                    ChartModel c = random_chart(s, 4, 2, 2);
                    CheckResult r("chart");
                    r.merge(chart_invariants(c));
                    MultiPoly u = random_symbol(s, c, 0, 3, 3);
                    for (int j = 1; j <= 3; ++j) r.merge(sym_d_agreement_check(c, u, j));
                    return r;
                  }});
    cs.push_back({"adjoint_relation_" + k, [](Sampler& s, Json& in) {
                    ChartModel c = random_chart(s, 4, 2, 2);
                    MultiPoly f = random_symbol(s, c, 3, 2, 5);
                    in["symbol"] = to_json(f);
                    CheckResult r("adjoint_relation");
                    for (Scalar kap : {Scalar(0), Scalar(1, 4), Scalar(1, 2), Scalar(1)}) r.merge(adjoint_relation_check(c, f, kap));
                    return r;
                  }});
    cs.push_back({"riccian_" + k, [](Sampler& s, Json&) {
                    ChartModel c = random_chart(s, 4, 2, 2);
                    Curvature cv = curvature_and_ricci(c);
                    CheckResult r("riccian");
                    r.merge(symmetric_riccian_check(c, cv.ric));
                    for (Scalar kap : {Scalar(0), Scalar(1, 4), Scalar(1, 2), Scalar(1)}) r.merge(kappa_riccian_check(c, cv.ric, kap));
                    return r;
                  }});
  }
  cs.push_back({"weyl_moyal_bridge", [](Sampler& s, Json& in) {
                  ChartModel c = flat_chart(4);
                  MultiPoly f = random_symbol(s, c, 2, 1, 3), g = random_symbol(s, c, 2, 1, 3);
                  in["f"] = to_json(f);
                  in["g"] = to_json(g);
                  return weyl_moyal_bridge_check(c, f, g);
                }});
  cs.push_back({"ricci_type_negative", [](Sampler& s, Json&) {
                  ChartModel c = random_chart(s, 4, 2, 2);
                  Curvature cv = curvature_and_ricci(c);
                  ChartModel flat = flat_chart(4);
                  Curvature z = curvature_and_ricci(flat);
                  CheckResult r("ricci_type_negative");
                  if (!ricci_type_predicate(z.riemann, z.ric, flat.omega())) r.fail("flat chart rejected");
                  if (ricci_type_predicate(cv.riemann, cv.ric, c.omega())) r.fail("generic chart accepted");
                  return r;
                }});
  return cs;
}

std::vector<Case> cases_for(const std::string& suite, const FlatModel& m, const RunConfig& cfg,
                            std::vector<std::string>& warnings) {
  if (suite == "frame") return frame_cases(m, cfg, warnings);
  if (suite == "moyal") return moyal_cases(m, cfg);
  if (suite == "koszul") return koszul_cases(m, cfg);
  if (suite == "closedform") return closedform_cases(m, cfg, warnings);
  if (suite == "symbols") return symbol_cases();
  throw InputError("unknown suite '" + suite + "'");
}

}  // namespace

std::vector<int> parse_signature(const std::string& text, int n) {
  const std::size_t N = static_cast<std::size_t>(2 * n + 2);
  if (text.empty() || text == "definite") return std::vector<int>(N, 1);
  if (text == "opposite") {
    std::vector<int> sig(N, 1);
    for (std::size_t a = N / 2; a < N; ++a) sig[a] = -1;
    return sig;
  }
  std::vector<int> sig;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "+" || item == "+1" || item == "1")
      sig.push_back(1);
    else if (item == "-" || item == "-1")
      sig.push_back(-1);
    else
      throw InputError("signature entry '" + item + "' is not +1 or -1");
  }
  if (sig.size() != N) throw InputError("signature needs " + std::to_string(N) + " entries");
  return sig;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 1) throw InputError("n must be at least 1");
  if (2 * cfg.n + 2 > kMaxVars) throw InputError("n too large");
  if (cfg.order < 0) throw InputError("order must be >= 0");
  if (cfg.degree < 1) throw InputError("degree must be >= 1");
  if (cfg.jobs < 0) throw InputError("jobs must be >= 0");
  if (!cfg.signature.empty() && cfg.signature.size() != static_cast<std::size_t>(2 * cfg.n + 2))
    throw InputError("signature needs 2n+2 entries");
  auto names = suite_names();
  if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw InputError("unknown suite '" + cfg.suite + "'");
}

FlatModel model_for(const RunConfig& cfg) {
  validate_config(cfg);
  return build_model(cfg.n, cfg.signature.empty() ? parse_signature("definite", cfg.n) : cfg.signature);
}

std::uint64_t case_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool SuiteReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.result.pass; });
}

std::vector<std::string> suite_names() { return {"frame", "moyal", "koszul", "closedform", "symbols"}; }

SuiteReport run_suite(const RunConfig& cfg) {
  FlatModel m = model_for(cfg);
  SuiteReport report;
  report.suite = cfg.suite;
  std::vector<Case> all;
  std::vector<std::string> selected = cfg.suite == "all" ? suite_names() : std::vector<std::string>{cfg.suite};
  for (const auto& name : selected)
    for (Case& c : cases_for(name, m, cfg, report.warnings)) all.push_back({name + "/" + c.id, std::move(c.fn)});

  report.cases.resize(all.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < all.size(); i = next++) {
      CaseReport& out = report.cases[i];
      out.id = all[i].id;
      out.inputs = Json::object();
      Sampler s(case_seed(cfg.seed, out.id));
      try {
        out.result = all[i].fn(s, out.inputs);
      } catch (const std::exception& e) {
        out.result = CheckResult();
        out.result.fail(std::string("exception: ") + e.what());
      }
      out.result.name = out.id;
    }
  };
  unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs) : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, all.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(report.cases.begin(), report.cases.end(), [](const CaseReport& a, const CaseReport& b) { return a.id < b.id; });
  return report;
}

Json to_json(const SuiteReport& r) {
  Json cases = Json::array(), failures = Json::array();
  for (const CaseReport& c : r.cases) {
    cases.push_back(to_json(c.result));
    if (!c.result.pass) failures.push_back({{"check", c.id}, {"inputs", c.inputs}, {"diff", c.result.witness}});
  }
  return {{"suite", r.suite}, {"pass", r.pass()}, {"warnings", r.warnings}, {"cases", cases}, {"failures", failures}};
}

}  // namespace redstar
