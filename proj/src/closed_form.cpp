#include "redstar/closed_form.hpp"

#include <string>

namespace redstar {

namespace {

Scalar inv_pow2_fact(int t) { return 1 / (factorial(t) * Scalar(mpz_class(1) << t)); }

FieldMatrix flat_hessian(const FlatModel& m, const LaurentH& f) {
  const int N = m.dim();
  FieldMatrix out(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int a = 0; a < N; ++a) {
    LaurentH da = f.derivative(a);
    for (int b = a; b < N; ++b) {
      out[a][b] = da.derivative(b);
      out[b][a] = out[a][b];
    }
  }
  return out;
}

// sum_{ab} P^{ab} T_{ab}.
LaurentH full_contract(const FlatModel& m, const FieldMatrix& P, const FieldMatrix& T) {
  LaurentAccumulator acc(m.ring());
  for (std::size_t a = 0; a < P.size(); ++a)
    for (std::size_t b = 0; b < P.size(); ++b) acc.add_product(P[a][b], T[a][b], Scalar(1));
  return std::move(acc).finish();
}

// (B^T T B)^{bd} = sum_{ac} B^{ab} B^{cd} T_{ac}.
FieldMatrix raise_both(const FlatModel& m, const FieldMatrix& B, const FieldMatrix& T) {
  const int N = m.dim();
  FieldMatrix TB(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int a = 0; a < N; ++a)
    for (int d = 0; d < N; ++d) {
      LaurentAccumulator acc(m.ring());
      for (int c = 0; c < N; ++c) acc.add_product(T[a][c], B[c][d], Scalar(1));
      TB[a][d] = std::move(acc).finish();
    }
  FieldMatrix out(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int b = 0; b < N; ++b)
    for (int d = 0; d < N; ++d) {
      LaurentAccumulator acc(m.ring());
      for (int a = 0; a < N; ++a) acc.add_product(B[a][b], TB[a][d], Scalar(1));
      out[b][d] = std::move(acc).finish();
    }
  return out;
}

void expect(CheckResult& r, const FlatModel& m, const LaurentH& lhs, const LaurentH& rhs, const std::string& where) {
  if (lhs != rhs) r.fail(where + ": diff " + (lhs - rhs).to_string(m.variable_names()));
}

}  // namespace

LaurentH delta_op(const FlatModel& m, const LaurentH& f) { return c_r(m, f, m.H(), 2); }

NuSeries delta_op(const FlatModel& m, const NuSeries& f) {
  return f.map([&](const LaurentH& c) { return delta_op(m, c); });
}

LaurentH delta_ric(const FlatModel& m, const GeometryScalars& g, const LaurentH& u) {
  LaurentH main = restrict_extend(m.H() * delta_op(m, u)) * Scalar(-(m.n() + 1));
  if (is_zero(g.U_lift)) return main;
  return main - apply_field(g.U_lift, u) * Scalar(1, 2 * m.n() + 1);
}

LaurentH delta_hk_coefficient(const FlatModel& m, const GeometryScalars& g, const LaurentH& u, int k,
                              const LaurentH& delta_ric_u) {
  const int n = m.n();
  LaurentH inner = delta_ric_u;
  if (!is_zero(g.U_lift)) inner += apply_field(g.U_lift, u) * Scalar(4 * k + 1, 2 * n + 1);
  inner += u * (-Scalar(k, n + 1) * g.tr_rho2 + Scalar(4 * k * k, 2 * n + 1) * g.f);
  return inner * Scalar(-1, n + 1);
}

GeometryScalars derive_scalars(const FlatModel& m) {
  const int n = m.n();
  const int N = m.dim();
  auto fail = [](const std::string& what) { throw ModelInconsistency("derive_scalars: " + what); };
  HessianDecomposition hd = hessian_decompose_H(m);
  GeometryScalars g;
  g.n = n;
  if (!hd.phi.is_constant()) fail("phi is not constant for this signature");
  g.phi = hd.phi.constant_value();
  g.f = g.phi * (n + 1) * (2 * n + 1) / 4;
  g.V_lift = hd.V_lift;
  g.U_lift = scale(hd.V_lift, Scalar((n + 1) * (2 * n + 1), 2));

  LaurentAccumulator tr(m.ring());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) tr.add_product(hd.tau[a][b], hd.tau[b][a], Scalar(1));
  LaurentH tr_tau2 = std::move(tr).finish();
  if (!tr_tau2.is_constant()) fail("tr tau^2 is not constant");
  g.tr_rho2 = tr_tau2.constant_value() * (n + 1) * (n + 1);
  g.K = g.tr_rho2 + Scalar(4 * (n + 1), 2 * n + 1) * g.f;

  // Second route to tr rho^2: Delta(H^{-1}) through the k = 1, u = 1 case.
  LaurentH one = m.constant(1);
  LaurentH direct = delta_op(m, LaurentH::h_power(m.ring(), 1));
  LaurentH closed = LaurentH::h_power(m.ring(), 2) * delta_hk_coefficient(m, g, one, 1, m.zero());
  if (direct != closed) fail("Delta(H^-1) disagrees with the derived tr rho^2");

  if (is_zero(g.V_lift)) {
    Scalar div_u = -Scalar(2 * n + 1, 2 * (n + 1)) * g.K + 2 * (n + 1) * g.f;
    if (div_u != 0) fail("div U != 0 although U = 0");
  }

  auto quads = invariant_quadratics(m);
  LaurentH hinv = LaurentH::h_power(m.ring(), 1);
  std::vector<LaurentH> probes = {LaurentH::from_poly(m.ring(), quads.front()) * hinv,
                                  LaurentH::from_poly(m.ring(), quads.front() * quads.back()) * hinv * hinv};
  for (const auto& u : probes) {
    auto r = delta_hk_pattern_check(m, g, u, 3);
    if (!r.pass) fail(r.witness);
  }
  return g;
}

CheckResult delta_hk_pattern_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& u, int max_k) {
  CheckResult r{"delta_hk_pattern"};
  LaurentH dr = delta_ric(m, g, u);
  for (int k = 0; k <= max_k; ++k) {
    LaurentH direct = delta_op(m, u.shift_hpow(k));
    LaurentH closed = delta_hk_coefficient(m, g, u, k, dr).shift_hpow(k + 1);
    expect(r, m, direct, closed, "k=" + std::to_string(k));
  }
  return r;
}

LaurentH h_on_Hk(const FlatModel& m, const LaurentH& u, int k) {
  if (k < 0) throw InputError("h_on_Hk: k must be non-negative");
  LaurentAccumulator acc(m.ring());
  for (int j = 1; j <= k; ++j) acc.add(u.shift_hpow(j), Scalar(-1));
  return std::move(acc).finish();
}

CheckResult koszul_difference_check(const FlatModel& m, const NuSeries& f) {
  CheckResult r{"koszul_difference"};
  NuSeries lhs = koszul_difference(m, f);
  NuSeries rhs = (delta_op(m, f) * Scalar(1, 8)).shift_nu(2);
  for (int k = 0; k <= f.order(); ++k) expect(r, m, lhs[k], rhs[k], "nu^" + std::to_string(k));
  return r;
}

CheckResult closed_restriction_check(const FlatModel& m, const NuSeries& f) {
  CheckResult r{"closed_restriction"};
  NuSeries g = f, term = f;
  for (int s = 1; 2 * s <= f.order(); ++s) {
    term = (delta_op(m, homotopy_h(term)) * Scalar(-1, 8)).shift_nu(2);
    g += term;
  }
  NuSeries closed = restrict_extend(g), generic = quantum_restriction(m, f);
  for (int k = 0; k <= f.order(); ++k) expect(r, m, closed[k], generic[k], "nu^" + std::to_string(k));
  return r;
}

CheckResult delta_explicit_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& f) {
  CheckResult r{"delta_explicit"};
  const int n = m.n();
  HessianDecomposition hd = hessian_decompose_H(m);
  FieldMatrix ric_lift = raise_both(m, m.reduced_bivector(), hd.t_lift);
  for (auto& row : ric_lift)
    for (auto& e : row) e *= Scalar(n + 1);
  LaurentH ric_term = full_contract(m, ric_lift, flat_hessian(m, f));
  const Field& V = g.V_lift;
  LaurentH Sf = f.lie_S();
  LaurentH rhs = ric_term * Scalar(-1, n + 1) - apply_field(V, f) * Scalar(1, 2) - Sf.lie_S() * g.phi + apply_field(V, Sf) +
                 apply_field(V, f).lie_S() + m.lie_XH(m.lie_XH(f)) * Scalar(1, 2);
  expect(r, m, delta_op(m, f), rhs.shift_hpow(1), "C_2(f, H)");
  return r;
}

namespace {

// Sum_k H^{-k} w_k with invariant degree-0 w_k.
using HkForm = std::map<int, LaurentH>;

HkForm apply_h(const FlatModel& m, const HkForm& x) {
  HkForm out;
  for (const auto& [k, w] : x)
    for (int j = 1; j <= k; ++j) {
      auto it = out.try_emplace(j, m.zero()).first;
      it->second -= w;
    }
  return out;
}

HkForm apply_delta(const FlatModel& m, const GeometryScalars& g, const HkForm& x) {
  HkForm out;
  for (const auto& [k, w] : x) {
    if (w.is_zero()) continue;
    out.emplace(k + 1, delta_hk_coefficient(m, g, w, k, delta_ric(m, g, w)));
  }
  return out;
}

LaurentH iota(const FlatModel& m, const HkForm& x) {
  LaurentH out = m.zero();
  for (const auto& [k, w] : x) out += w;
  return out;
}

}  // namespace

NuSeries fast_reduced_product(const FlatModel& m, const GeometryScalars& g, const NuSeries& u, const NuSeries& v) {
  require_reduced(m, u, "fast_reduced_product");
  require_reduced(m, v, "fast_reduced_product");
  if (u.order() != v.order()) throw InputError("truncation orders differ");
  const int order = u.order();
  NuSeries out(m.ring(), order);
  for (int a = 0; a <= order; ++a) {
    if (u[a].is_zero()) continue;
    for (int b = 0; a + b <= order; ++b) {
      if (v[b].is_zero()) continue;
      const int R = order - a - b;
      DerivativeCache cu(u[a]), cv(v[b]);
      for (int t = 0; t <= R; ++t) {
        LaurentH chat = contract_r(m.lambda(), cu, cv, t).shift_hpow(-t);
        HkForm state;
        state.emplace(t, chat);
        Scalar w = inv_pow2_fact(t);
        for (int s = 0; 2 * s + t <= R; ++s) {
          if (s > 0) {
            state = apply_delta(m, g, apply_h(m, state));
            w /= -8;
          }
          out[a + b + 2 * s + t] += iota(m, state) * w;
        }
      }
    }
  }
  return out;
}

CheckResult second_order_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& u, const LaurentH& v) {
  CheckResult r{"second_order"};
  const int n = m.n();
  LaurentH lhs = extract_operators(m, to_series(m, u, 2), to_series(m, v, 2), 2).c_red;
  FieldMatrix B = m.reduced_bivector();
  LaurentH hess_term = full_contract(m, raise_both(m, B, flat_hessian(m, u)), flat_hessian(m, v));
  LaurentH polar = delta_ric(m, g, u * v) - u * delta_ric(m, g, v) - v * delta_ric(m, g, u);
  expect(r, m, lhs, hess_term + polar * Scalar(1, n + 1), "C_2^red");
  return r;
}

CheckResult pullback_hessian_table_check(const FlatModel& m, const GeometryScalars& g, const LaurentH& u) {
  CheckResult r{"pullback_hessian_table"};
  FieldMatrix F = flat_hessian(m, u);
  HessianDecomposition hd = hessian_decompose_H(m);
  const Field &S = m.S(), &X = m.XH();
  auto hor = horizontal_fields(m);
  expect(r, m, apply_form2(F, S, S), m.zero(), "(S,S)");
  expect(r, m, apply_form2(F, S, X), m.zero(), "(S,X_H)");
  expect(r, m, apply_form2(F, X, X), apply_field(g.V_lift, u), "(X_H,X_H)");
  for (std::size_t a = 0; a < hor.size(); ++a) {
    const Field& v = hor[a];
    std::string i = std::to_string(a);
    expect(r, m, apply_form2(F, v, S), apply_field(v, u) * Scalar(-1, 2), "(v" + i + ",S)");
    expect(r, m, apply_form2(F, v, X), -apply_field(apply_endo(hd.tau, v), u), "(v" + i + ",X_H)");
    for (std::size_t b = a; b < hor.size(); ++b) {
      const Field& w = hor[b];
      LaurentH lifted = apply_field(v, apply_field(w, u)) - apply_field(m.horizontal_project(covariant(v, w)), u);
      expect(r, m, apply_form2(F, v, w), lifted, "(v" + i + ",v" + std::to_string(b) + ")");
    }
  }
  return r;
}

}  // namespace redstar
