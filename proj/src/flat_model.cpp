#include "redstar/flat_model.hpp"

namespace redstar {

FlatModel::FlatModel(int n, std::vector<int> signature) : n_(n), signature_(std::move(signature)) {
  if (n < 1) throw InputError("n must be at least 1");
  const int N = dim();
  if (N > kMaxVars) throw InputError("n too large for the polynomial kernel");
  if (static_cast<int>(signature_.size()) != N) throw InputError("signature must have 2n+2 entries");
  for (int s : signature_)
    if (s != 1 && s != -1) throw InputError("signature entries must be +1 or -1");

  lambda_ = zero_matrix(N, N);
  for (int i = 0; i <= n; ++i) {
    lambda_[i][n + 1 + i] = 1;
    lambda_[n + 1 + i][i] = -1;
  }
  mu_ = inverse(lambda_);
  gram_ = zero_matrix(N, N);
  for (int a = 0; a < N; ++a) gram_[a][a] = signature_[a];
  xh_matrix_ = transpose(lambda_) * gram_;

  MultiPoly h(N);
  for (int a = 0; a < N; ++a)
    h += MultiPoly::variable(N, a) * MultiPoly::variable(N, a) * Scalar(signature_[a], 2);
  ring_ = make_hring(N, h);

  LaurentH hinv = LaurentH::h_power(ring_, 1);
  for (int a = 0; a < N; ++a) {
    S_.push_back(coord(a) * Scalar(1, 2));
    MultiPoly xa(N);
    for (int b = 0; b < N; ++b)
      if (xh_matrix_[a][b] != 0) xa += MultiPoly::variable(N, b) * xh_matrix_[a][b];
    XH_.push_back(LaurentH::from_poly(ring_, xa));
    ds_.push_back(hinv.times_poly(ring_->dH[static_cast<std::size_t>(a)]));
  }
  for (int b = 0; b < N; ++b) {
    MultiPoly al(N);
    for (int a = 0; a < N; ++a)
      if (mu_[a][b] != 0) al += MultiPoly::variable(N, a) * (mu_[a][b] / 2);
    alpha_.push_back(hinv.times_poly(al));
  }
}

bool FlatModel::admissible() const {
  int same = 0;
  for (int i = 0; i <= n_; ++i)
    if (signature_[i] == signature_[n_ + 1 + i]) ++same;
  return same == 0 || same == n_ + 1;
}

std::vector<std::string> FlatModel::variable_names() const {
  std::vector<std::string> names;
  for (int i = 0; i <= n_; ++i) names.push_back("q" + std::to_string(i));
  for (int i = 0; i <= n_; ++i) names.push_back("p" + std::to_string(i));
  return names;
}

LaurentH FlatModel::H() const { return LaurentH::from_poly(ring_, ring_->H); }

LaurentH FlatModel::coord(int a) const { return LaurentH::from_poly(ring_, MultiPoly::variable(dim(), a)); }

Field FlatModel::coord_field(int a) const {
  Field v = zero_field(*this);
  v[static_cast<std::size_t>(a)] = constant(Scalar(1));
  return v;
}

LaurentH FlatModel::poisson(const LaurentH& f, const LaurentH& g) const {
  const int N = dim();
  std::vector<LaurentH> df, dg;
  for (int a = 0; a < N; ++a) {
    df.push_back(f.derivative(a));
    dg.push_back(g.derivative(a));
  }
  LaurentAccumulator acc(ring_);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (lambda_[a][b] != 0) acc.add_product(df[a], dg[b], lambda_[a][b]);
  return std::move(acc).finish();
}

LaurentH FlatModel::lie_XH(const LaurentH& f) const { return apply_field(XH_, f); }

LaurentH FlatModel::mu_pair(const Field& v, const Field& w) const {
  LaurentAccumulator acc(ring_);
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b)
      if (mu_[a][b] != 0) acc.add_product(v[a], w[b], mu_[a][b]);
  return std::move(acc).finish();
}

LaurentH FlatModel::gram_pair(const Field& v, const Field& w) const {
  LaurentAccumulator acc(ring_);
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b)
      if (gram_[a][b] != 0) acc.add_product(v[a], w[b], gram_[a][b]);
  return std::move(acc).finish();
}

Field FlatModel::horizontal_project(const Field& v) const {
  return v - scale(S_, pair(ds_, v)) + scale(XH_, pair(alpha_, v));
}

FieldMatrix FlatModel::reduced_bivector() const {
  const int N = dim();
  LaurentH h = H();
  FieldMatrix B(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), zero()));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) B[a][b] = h * lambda_[a][b] - (S_[a] * XH_[b] - XH_[a] * S_[b]);
  return B;
}

FieldMatrix FlatModel::projector() const {
  const int N = dim();
  FieldMatrix P(static_cast<std::size_t>(N), Field(static_cast<std::size_t>(N), zero()));
  for (int b = 0; b < N; ++b) {
    Field col = horizontal_project(coord_field(b));
    for (int a = 0; a < N; ++a) P[a][b] = col[a];
  }
  return P;
}

FlatModel build_model(int n, const std::vector<int>& signature) { return FlatModel(n, signature); }

FlatModel build_model(int n) { return FlatModel(n, std::vector<int>(static_cast<std::size_t>(2 * n + 2), 1)); }

Field zero_field(const FlatModel& m) { return Field(static_cast<std::size_t>(m.dim()), m.zero()); }

LaurentH apply_field(const Field& v, const LaurentH& f) {
  LaurentAccumulator acc(f.ring());
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a].is_zero()) continue;
    acc.add_product(v[a], f.derivative(static_cast<int>(a)), Scalar(1));
  }
  return std::move(acc).finish();
}

LaurentH pair(const Field& form, const Field& v) {
  if (form.size() != v.size()) throw InputError("field sizes differ");
  if (form.empty()) return LaurentH();
  LaurentAccumulator acc(form[0].ring());
  for (std::size_t a = 0; a < v.size(); ++a) acc.add_product(form[a], v[a], Scalar(1));
  return std::move(acc).finish();
}

Field covariant(const Field& v, const Field& w) {
  Field out;
  out.reserve(w.size());
  for (const auto& c : w) out.push_back(apply_field(v, c));
  return out;
}

Field lie_bracket(const Field& v, const Field& w) { return covariant(v, w) - covariant(w, v); }

Field operator+(const Field& a, const Field& b) {
  if (a.size() != b.size()) throw InputError("field sizes differ");
  Field out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Field operator-(const Field& a, const Field& b) {
  if (a.size() != b.size()) throw InputError("field sizes differ");
  Field out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Field scale(const Field& v, const LaurentH& f) {
  Field out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c * f);
  return out;
}

Field scale(const Field& v, const Scalar& c) {
  Field out = v;
  for (auto& x : out) x *= c;
  return out;
}

bool is_zero(const Field& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace redstar
