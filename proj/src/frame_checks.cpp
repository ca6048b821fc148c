#include "redstar/frame_checks.hpp"

#include <string>

namespace redstar {

namespace {

std::string idx(int a) { return std::to_string(a); }
std::string idx(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

void expect(CheckResult& r, const LaurentH& lhs, const LaurentH& rhs, const std::string& where) {
  if (lhs != rhs) r.fail(where + ": diff " + (lhs - rhs).to_string());
}

void expect(CheckResult& r, const Field& lhs, const Field& rhs, const std::string& where) {
  for (std::size_t a = 0; a < lhs.size(); ++a)
    if (lhs[a] != rhs[a]) {
      r.fail(where + "[" + idx(static_cast<int>(a)) + "]: diff " + (lhs[a] - rhs[a]).to_string());
      return;
    }
}

}  // namespace

CheckResult validate_model(const FlatModel& m) {
  CheckResult r{"model"};
  const int N = m.dim();
  const Matrix& mu = m.mu();
  if (!(transpose(mu) == scaled(mu, Scalar(-1)))) r.fail("mu is not antisymmetric");
  if (determinant(mu) == 0) r.fail("mu is degenerate");
  if (!(mu * m.lambda() == identity_matrix(N))) r.fail("Lambda is not the inverse of mu");
  if (!(transpose(m.gram()) == m.gram()) || determinant(m.gram()) == 0) r.fail("G is not a nondegenerate symmetric form");
  // For linear fields Y = C x: (Lie_Y mu)_{ab} = mu_{cb} C^c_a + mu_{ac} C^c_b.
  auto lie_mu = [&](const Matrix& C) { return transpose(C) * mu + mu * C; };
  if (!(lie_mu(scaled(identity_matrix(N), Scalar(1, 2))) == mu)) r.fail("Lie_S mu != mu");
  if (!(lie_mu(m.xh_matrix()) == zero_matrix(N, N))) r.fail("Lie_{X_H} mu != 0");
  LaurentH H = m.H();
  expect(r, m.lie_S(H), H, "Lie_S H");
  expect(r, m.lie_XH(H), m.zero(), "X_H(H)");
  expect(r, pair(m.ds(), m.S()), m.constant(1), "ds(S)");
  expect(r, pair(m.ds(), m.XH()), m.zero(), "ds(X_H)");
  expect(r, pair(m.alpha(), m.S()), m.zero(), "alpha(S)");
  expect(r, pair(m.alpha(), m.XH()), m.constant(-1), "alpha(X_H)");
  expect(r, m.mu_pair(m.XH(), m.S()), H, "mu(X_H, S)");
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        if (!H.derivative(a).derivative(b).derivative(c).is_zero()) r.fail("third derivative of H at " + idx(a, b));
  for (int a = 0; a < N; ++a)
    expect(r, m.poisson(m.H(), m.coord(a)), m.XH()[a], "X_H = {H, .} on x" + idx(a));
  return r;
}

CheckResult projector_checks(const FlatModel& m) {
  CheckResult r{"projector"};
  const int N = m.dim();
  expect(r, m.horizontal_project(m.S()), zero_field(m), "Pi S");
  expect(r, m.horizontal_project(m.XH()), zero_field(m), "Pi X_H");
  LaurentAccumulator trace(m.ring());
  for (int a = 0; a < N; ++a) {
    Field v = m.horizontal_project(m.coord_field(a));
    expect(r, m.horizontal_project(v), v, "Pi^2 d" + idx(a));
    expect(r, pair(m.ds(), v), m.zero(), "ds(Pi d" + idx(a) + ")");
    expect(r, pair(m.alpha(), v), m.zero(), "alpha(Pi d" + idx(a) + ")");
    trace.add(v[a]);
  }
  expect(r, std::move(trace).finish(), m.constant(2 * m.n()), "tr Pi");
  return r;
}

CheckResult reduced_bivector_checks(const FlatModel& m) {
  CheckResult r{"reduced_bivector"};
  const int N = m.dim();
  FieldMatrix B = m.reduced_bivector();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      expect(r, B[a][b], -B[b][a], "B antisymmetry " + idx(a, b));
      if (B[a][b].max_hpow() > 0) r.fail("B entry is not polynomial at " + idx(a, b));
      for (const auto& pc : B[a][b].pieces())
        if (pc.degree != 2) r.fail("B entry is not quadratic at " + idx(a, b));
    }
  for (int b = 0; b < N; ++b) {
    Field col(static_cast<std::size_t>(N), m.zero());
    for (int a = 0; a < N; ++a) col[a] = B[a][b];
    expect(r, pair(m.ds(), col), m.zero(), "B(ds, dx" + idx(b) + ")");
    expect(r, pair(m.alpha(), col), m.zero(), "B(alpha, dx" + idx(b) + ")");
  }
  // H Lambda_P - S wedge X_H - B = 0 entrywise.
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      expect(r, m.H() * m.lambda()[a][b] - (m.S()[a] * m.XH()[b] - m.XH()[a] * m.S()[b]), B[a][b], "B definition");
  return r;
}

CheckResult schouten_check(const FlatModel& m, bool flip_lambda) {
  CheckResult r{flip_lambda ? "schouten_flipped" : "schouten"};
  const int N = m.dim();
  FieldMatrix B = m.reduced_bivector();
  if (flip_lambda)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) B[a][b] -= m.H() * (2 * m.lambda()[a][b]);
  const Field& X = m.XH();
  std::vector<FieldMatrix> dB(static_cast<std::size_t>(N), B);
  for (int l = 0; l < N; ++l)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) dB[l][a][b] = B[a][b].derivative(l);
  auto T = [&](int i, int j, int k) {
    LaurentAccumulator acc(m.ring());
    for (int l = 0; l < N; ++l) acc.add_product(B[i][l], dB[l][j][k], Scalar(1));
    return std::move(acc).finish();
  };
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int k = j + 1; k < N; ++k) {
        LaurentH schouten = (T(i, j, k) + T(j, k, i) + T(k, i, j)) * Scalar(2);
        LaurentH wedge = B[i][j] * X[k] + B[j][k] * X[i] + B[k][i] * X[j];
        expect(r, schouten, wedge * Scalar(-2), "[B,B]^{" + idx(i, j) + "," + idx(k) + "}");
        if (!r.pass) return r;
      }
  // Lambda_P itself is Poisson: constant entries, so every term vanishes.
  return r;
}

std::vector<Field> horizontal_fields(const FlatModel& m) {
  std::vector<Field> out;
  for (int a = 0; a < m.dim(); ++a) out.push_back(m.horizontal_project(m.coord_field(a)));
  return out;
}

Field apply_endo(const FieldMatrix& T, const Field& v) {
  Field out;
  for (const auto& row : T) out.push_back(pair(row, v));
  return out;
}

LaurentH apply_form2(const FieldMatrix& T, const Field& v, const Field& w) {
  Field Tw = apply_endo(T, w);
  return pair(Tw, v);
}

HessianDecomposition hessian_decompose_H(const FlatModel& m) {
  const int N = m.dim();
  const Matrix& G = m.gram();
  const Matrix& L = m.lambda();
  LaurentH H = m.H();
  LaurentH hinv = LaurentH::h_power(m.ring(), 1);
  FieldMatrix P = m.projector();
  HessianDecomposition d;

  // Pi^T G Pi.
  FieldMatrix GP(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int a = 0; a < N; ++a)
    for (int d2 = 0; d2 < N; ++d2) GP[a][d2] = P[a][d2] * G[a][a];
  d.t_lift.assign(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int c = 0; c < N; ++c)
    for (int e = c; e < N; ++e) {
      LaurentAccumulator acc(m.ring());
      for (int a = 0; a < N; ++a) acc.add_product(P[a][c], GP[a][e], Scalar(1));
      d.t_lift[c][e] = -(std::move(acc).finish() * hinv);
      d.t_lift[e][c] = d.t_lift[c][e];
    }

  // beta = Pi^T G X_H, V = Pi(Lambda beta).
  Field GX(static_cast<std::size_t>(N), m.zero());
  for (int a = 0; a < N; ++a) GX[a] = m.XH()[a] * G[a][a];
  Field beta(static_cast<std::size_t>(N), m.zero());
  for (int c = 0; c < N; ++c) {
    LaurentAccumulator acc(m.ring());
    for (int a = 0; a < N; ++a) acc.add_product(P[a][c], GX[a], Scalar(1));
    beta[c] = std::move(acc).finish();
  }
  Field lb(static_cast<std::size_t>(N), m.zero());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (L[a][b] != 0) lb[a] += beta[b] * L[a][b];
  d.V_lift = m.horizontal_project(lb);

  d.phi = -(m.gram_pair(m.XH(), m.XH()) * hinv);

  // tau = Pi Lambda (H t).
  FieldMatrix LHt(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int b = 0; b < N; ++b)
    for (int e = 0; e < N; ++e)
      for (int c = 0; c < N; ++c)
        if (L[b][c] != 0) LHt[b][e] += d.t_lift[c][e] * H * L[b][c];
  d.tau.assign(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), m.zero()));
  for (int a = 0; a < N; ++a)
    for (int e = 0; e < N; ++e) {
      LaurentAccumulator acc(m.ring());
      for (int b = 0; b < N; ++b) acc.add_product(P[a][b], LHt[b][e], Scalar(1));
      d.tau[a][e] = std::move(acc).finish();
    }

  // Block identities of Hess H = G.
  auto fail = [](const std::string& what) { throw ModelInconsistency("hessian_decompose_H: " + what); };
  if (m.gram_pair(m.S(), m.S()) != H * Scalar(1, 2)) fail("(nabla_S dH)(S) != H/2");
  if (!m.gram_pair(m.S(), m.XH()).is_zero()) fail("(nabla_S dH)(X_H) != 0");
  auto hor = horizontal_fields(m);
  for (int a = 0; a < N; ++a) {
    const Field& v = hor[a];
    if (!m.gram_pair(v, m.S()).is_zero()) fail("(nabla_v dH)(S) != 0");
    if (m.gram_pair(v, m.XH()) != m.mu_pair(v, d.V_lift)) fail("mixed X_H block at " + idx(a));
    for (int b = a; b < N; ++b)
      if (m.gram_pair(v, hor[b]) != -(apply_form2(d.t_lift, v, hor[b]) * H)) fail("horizontal block at " + idx(a, b));
  }
  if (pair(m.ds(), d.V_lift) != m.zero() || pair(m.alpha(), d.V_lift) != m.zero()) fail("V is not horizontal");
  return d;
}

CheckResult connection_split_check(const FlatModel& m) {
  CheckResult r{"connection_split"};
  const int N = m.dim();
  HessianDecomposition hd = hessian_decompose_H(m);
  LaurentH hinv = LaurentH::h_power(m.ring(), 1);
  const Field &S = m.S(), &X = m.XH();
  auto hor = horizontal_fields(m);

  for (int a = 0; a < N; ++a) {
    const Field& v = hor[a];
    for (int b = 0; b < N; ++b) {
      const Field& w = hor[b];
      Field nvw = covariant(v, w);
      expect(r, pair(m.ds(), nvw), apply_form2(hd.t_lift, v, w), "S-component of nabla_v w " + idx(a, b));
      expect(r, -pair(m.alpha(), nvw), m.mu_pair(v, w) * hinv * Scalar(1, 2), "X_H-component of nabla_v w " + idx(a, b));
    }
    // nabla_v X_H = (tau v) + (-mu(v, V)/H) S.
    Field nvx = covariant(v, X);
    expect(r, pair(m.ds(), nvx), -(m.mu_pair(v, hd.V_lift) * hinv), "S-component of nabla_v X_H " + idx(a));
    expect(r, pair(m.alpha(), nvx), m.zero(), "X_H-component of nabla_v X_H " + idx(a));
    expect(r, m.horizontal_project(nvx), apply_endo(hd.tau, v), "horizontal part of nabla_v X_H " + idx(a));
    for (int b = 0; b < N; ++b)
      expect(r, m.mu_pair(hor[b], apply_endo(hd.tau, v)), -m.gram_pair(hor[b], v), "tau pairing " + idx(a, b));
    expect(r, covariant(v, S), scale(v, Scalar(1, 2)), "nabla_v S " + idx(a));
  }
  Field nxx = covariant(X, X);
  expect(r, pair(m.ds(), nxx), hd.phi, "S-component of nabla_{X_H} X_H");
  expect(r, pair(m.alpha(), nxx), m.zero(), "X_H-component of nabla_{X_H} X_H");
  expect(r, m.horizontal_project(nxx), scale(hd.V_lift, Scalar(-1)), "horizontal part of nabla_{X_H} X_H");
  expect(r, covariant(X, S), scale(X, Scalar(1, 2)), "nabla_{X_H} S");
  expect(r, covariant(S, X), scale(X, Scalar(1, 2)), "nabla_S X_H");
  expect(r, covariant(S, S), scale(S, Scalar(1, 2)), "nabla_S S");
  return r;
}

std::vector<Matrix> xh_commutant_basis(const FlatModel& m) {
  const int N = m.dim();
  const Matrix& A = m.xh_matrix();
  // Unknown C flattened row-major; equation (AC - CA)_{ij} = 0.
  Matrix eq = zero_matrix(N * N, N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int row = i * N + j;
      for (int k = 0; k < N; ++k) {
        eq[row][k * N + j] += A[i][k];
        eq[row][i * N + k] -= A[k][j];
      }
    }
  std::vector<Matrix> out;
  for (const auto& v : nullspace(eq)) {
    Matrix C = zero_matrix(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) C[i][j] = v[static_cast<std::size_t>(i * N + j)];
    out.push_back(C);
  }
  return out;
}

CheckResult bracket_checks(const FlatModel& m) {
  CheckResult r{"brackets"};
  const int N = m.dim();
  LaurentH hinv = LaurentH::h_power(m.ring(), 1);
  const Field &S = m.S(), &X = m.XH();
  expect(r, lie_bracket(S, X), zero_field(m), "[S, X_H]");
  auto hor = horizontal_fields(m);
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      Field br = lie_bracket(hor[a], hor[b]);
      expect(r, pair(m.ds(), br), m.zero(), "ds([v,w]) " + idx(a, b));
      expect(r, br - m.horizontal_project(br), scale(X, m.mu_pair(hor[a], hor[b]) * hinv), "vertical part of [v,w] " + idx(a, b));
    }
  // Genuine lifts Pi(C x) with [A, C] = 0.
  std::vector<Field> lifts;
  for (const Matrix& C : xh_commutant_basis(m)) {
    Field lin(static_cast<std::size_t>(N), m.zero());
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (C[i][j] != 0) lin[i] += m.coord(j) * C[i][j];
    lifts.push_back(m.horizontal_project(lin));
  }
  if (lifts.empty()) r.fail("no commuting linear fields found");
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    expect(r, lie_bracket(S, lifts[i]), zero_field(m), "[S, lift " + idx(static_cast<int>(i)) + "]");
    expect(r, lie_bracket(X, lifts[i]), zero_field(m), "[X_H, lift " + idx(static_cast<int>(i)) + "]");
  }
  for (std::size_t i = 0; i < lifts.size() && i < 4; ++i)
    for (std::size_t j = i + 1; j < lifts.size() && j < 4; ++j) {
      Field br = lie_bracket(lifts[i], lifts[j]);
      expect(r, br - m.horizontal_project(br), scale(X, m.mu_pair(lifts[i], lifts[j]) * hinv), "vertical part of lift bracket");
    }
  return r;
}

}  // namespace redstar
