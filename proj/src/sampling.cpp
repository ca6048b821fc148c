#include "redstar/sampling.hpp"

#include <map>

#include "redstar/linalg.hpp"

namespace redstar {

int Sampler::uniform(int lo, int hi) {
  if (hi < lo) throw InputError("empty sampling range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng_() % span);
}

Scalar Sampler::nonzero_scalar(int max_num, int max_den) {
  int num = uniform(1, max_num);
  if (uniform(0, 1)) num = -num;
  return make_scalar(num, uniform(1, max_den));
}

MultiPoly Sampler::poly(int nvars, const std::vector<int>& degrees, int terms) {
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    int d = degrees[static_cast<std::size_t>(uniform(0, static_cast<int>(degrees.size()) - 1))];
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    for (int k = 0; k < d; ++k) ++e[static_cast<std::size_t>(uniform(0, nvars - 1))];
    out.push_back({Monomial(e), nonzero_scalar()});
  }
  return MultiPoly::from_terms(nvars, std::move(out));
}

LaurentH Sampler::laurent(const FlatModel& m, int max_deg, int max_hpow, int terms) {
  std::vector<int> degs;
  for (int d = 0; d <= max_deg; ++d) degs.push_back(d);
  std::vector<MultiPoly> slots;
  for (int k = 0; k <= max_hpow; ++k) slots.push_back(poly(m.dim(), degs, terms));
  return LaurentH(m.ring(), std::move(slots));
}

LaurentH Sampler::even_laurent(const FlatModel& m, int max_deg, int max_hpow, int terms) {
  std::vector<int> degs;
  for (int d = 0; d <= max_deg; d += 2) degs.push_back(d);
  std::vector<MultiPoly> slots;
  for (int k = 0; k <= max_hpow; ++k) slots.push_back(poly(m.dim(), degs, terms));
  return LaurentH(m.ring(), std::move(slots));
}

LaurentH Sampler::invariant_degree0(const FlatModel& m, int max_j, int terms) {
  auto basis = invariant_quadratics(m);
  LaurentH out = m.zero();
  for (int t = 0; t < terms; ++t) {
    int j = uniform(0, max_j);
    MultiPoly p = MultiPoly::constant(m.dim(), nonzero_scalar());
    for (int k = 0; k < j; ++k) {
      MultiPoly q(m.dim());
      for (int c = 0; c < 2; ++c) q += basis[static_cast<std::size_t>(uniform(0, static_cast<int>(basis.size()) - 1))] * nonzero_scalar(3, 2);
      p = p * q;
    }
    out += LaurentH::h_power(m.ring(), j).times_poly(p);
  }
  return out;
}

LaurentH Sampler::sigma_function(const FlatModel& m, int max_j, int terms) {
  LaurentH out = m.zero();
  for (int t = 0; t < terms; ++t) {
    int j = uniform(0, max_j);
    MultiPoly p = MultiPoly::constant(m.dim(), nonzero_scalar());
    for (int k = 0; k < j; ++k) p = p * poly(m.dim(), {2}, 2);
    out += LaurentH::h_power(m.ring(), j).times_poly(p);
  }
  return out;
}

std::vector<MultiPoly> invariant_quadratics(const FlatModel& m) {
  const int N = m.dim();
  std::vector<std::vector<int>> monos;
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      std::vector<int> e(static_cast<std::size_t>(N), 0);
      ++e[static_cast<std::size_t>(a)];
      ++e[static_cast<std::size_t>(b)];
      monos.push_back(e);
    }
  std::map<std::vector<int>, int> row_of;
  for (std::size_t i = 0; i < monos.size(); ++i) row_of[monos[i]] = static_cast<int>(i);
  Matrix A = zero_matrix(static_cast<int>(monos.size()), static_cast<int>(monos.size()));
  for (std::size_t c = 0; c < monos.size(); ++c) {
    LaurentH img = m.lie_XH(LaurentH::from_poly(m.ring(), MultiPoly::monomial(N, monos[c], Scalar(1))));
    for (const auto& t : img.slot(0).terms()) A[row_of.at(t.mono.exponents(N))][c] += t.coeff;
  }
  std::vector<MultiPoly> out;
  for (const auto& v : nullspace(A)) {
    MultiPoly p(N);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) p += MultiPoly::monomial(N, monos[i], v[i]);
    out.push_back(p);
  }
  return out;
}

bool is_invariant_degree0(const FlatModel& m, const LaurentH& f) {
  return f.is_degree_zero() && m.lie_XH(f).is_zero();
}

}  // namespace redstar
