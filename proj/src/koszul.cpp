#include "redstar/koszul.hpp"

#include <string>

namespace redstar {

std::map<int, LaurentH> s_degree_split(const LaurentH& f) {
  std::map<int, LaurentH> out;
  if (f.is_zero()) return out;
  std::map<int, LaurentAccumulator> acc;
  for (const auto& pc : f.pieces()) {
    if (pc.degree % 2)
      throw InputError("strict mode: numerator of odd degree " + std::to_string(pc.degree) + " at H^-" +
                       std::to_string(pc.hpow));
    int d = pc.degree / 2 - pc.hpow;
    acc.try_emplace(d, f.ring()).first->second.add(pc.hpow, pc.poly);
  }
  for (auto& [d, a] : acc) out.emplace(d, std::move(a).finish());
  return out;
}

LaurentH koszul_classical(const LaurentH& f) {
  if (f.is_zero()) return f;
  return f.times_poly(f.ring()->H - MultiPoly::constant(f.nvars(), Scalar(1)));
}

NuSeries koszul_classical(const NuSeries& f) {
  return f.map([](const LaurentH& c) { return koszul_classical(c); });
}

LaurentH restrict_extend(const LaurentH& f) {
  LaurentAccumulator acc(f.ring());
  if (f.is_zero()) return f;
  for (const auto& [d, fd] : s_degree_split(f)) acc.add(fd.shift_hpow(d));
  return std::move(acc).finish();
}

NuSeries restrict_extend(const NuSeries& f) {
  return f.map([](const LaurentH& c) { return restrict_extend(c); });
}

LaurentH homotopy_h(const LaurentH& f) {
  if (f.is_zero()) return f;
  LaurentAccumulator acc(f.ring());
  for (const auto& [d, fd] : s_degree_split(f)) {
    // f_d - f_d H^{-d} = (H - 1) h(f_d) by the finite geometric sum.
    if (d > 0)
      for (int j = 1; j <= d; ++j) acc.add(fd.shift_hpow(j));
    else if (d < 0)
      for (int j = 0; j < -d; ++j) acc.add(fd.shift_hpow(-j), Scalar(-1));
  }
  return std::move(acc).finish();
}

NuSeries homotopy_h(const NuSeries& f) {
  return f.map([](const LaurentH& c) { return homotopy_h(c); });
}

NuSeries koszul_quantum(const FlatModel& m, const NuSeries& f) {
  LaurentH hm1 = m.H() - m.constant(1);
  return moyal(m, f, to_series(m, hm1, f.order()));
}

NuSeries koszul_difference(const FlatModel& m, const NuSeries& f) {
  return koszul_quantum(m, f) - koszul_classical(f);
}

NuSeries koszul_resolvent(const FlatModel& m, const NuSeries& f) {
  NuSeries g = f, term = f;
  for (int j = 1; j <= f.order() + 1; ++j) {
    term = -koszul_difference(m, homotopy_h(term));
    if (term.is_zero()) break;
    g += term;
  }
  return g;
}

NuSeries quantum_homotopy(const FlatModel& m, const NuSeries& f) { return homotopy_h(koszul_resolvent(m, f)); }

NuSeries quantum_restriction(const FlatModel& m, const NuSeries& f) {
  return restrict_extend(koszul_resolvent(m, f));
}

namespace {

bool invariant(const FlatModel& m, const NuSeries& f) {
  for (const auto& c : f.coeffs())
    if (!m.lie_XH(c).is_zero()) return false;
  return true;
}

}  // namespace

IdealMembership ideal_predicates(const FlatModel& m, const NuSeries& f) {
  IdealMembership r{};
  NuSeries cl = restrict_extend(f);
  r.in_classical_ideal = cl.is_zero();
  r.in_classical_idealizer = invariant(m, cl);
  NuSeries q = quantum_restriction(m, f);
  r.in_quantum_ideal = q.is_zero();
  r.in_quantum_idealizer = invariant(m, q);
  return r;
}

bool is_invariant_degree0(const FlatModel& m, const NuSeries& f) {
  for (const auto& c : f.coeffs())
    if (!is_invariant_degree0(m, c)) return false;
  return true;
}

bool is_sigma_function(const NuSeries& f) {
  for (const auto& c : f.coeffs())
    if (!c.is_degree_zero()) return false;
  return true;
}

void require_reduced(const FlatModel& m, const NuSeries& u, const char* what) {
  for (int r = 0; r <= u.order(); ++r) {
    if (!u[r].is_degree_zero())
      throw InputError(std::string(what) + ": coefficient of nu^" + std::to_string(r) + " is not of S-degree 0");
    LaurentH x = m.lie_XH(u[r]);
    if (!x.is_zero())
      throw InputError(std::string(what) + ": coefficient of nu^" + std::to_string(r) +
                       " is not X_H-invariant, Lie_{X_H} gives " + x.to_string(m.variable_names()));
  }
}

NuSeries left_action(const FlatModel& m, const NuSeries& f, const NuSeries& psi) {
  if (!is_sigma_function(psi)) throw InputError("left_action: psi is not of S-degree 0");
  return quantum_restriction(m, moyal(m, f, psi));
}

NuSeries right_action(const FlatModel& m, const NuSeries& psi, const NuSeries& u) {
  if (!is_sigma_function(psi)) throw InputError("right_action: psi is not of S-degree 0");
  require_reduced(m, u, "right_action");
  return quantum_restriction(m, moyal(m, psi, u));
}

NuSeries reduced_product(const FlatModel& m, const NuSeries& u, const NuSeries& v) {
  require_reduced(m, u, "reduced_product");
  require_reduced(m, v, "reduced_product");
  NuSeries out = quantum_restriction(m, moyal(m, u, v));
  for (int r = 0; r <= out.order(); ++r)
    if (!is_invariant_degree0(m, out[r]))
      throw ConsistencyError("reduced_product: nu^" + std::to_string(r) + " coefficient fails certification");
  return out;
}

ReducedOperators extract_operators(const FlatModel& m, const NuSeries& u, const NuSeries& v, int r) {
  if (r < 0 || r > u.order()) throw InputError("extract_operators: r out of range");
  Scalar w = factorial(r) * Scalar(mpz_class(1) << r);
  ReducedOperators out;
  out.c_red = reduced_product(m, u, v)[r] * w;
  out.c_hat = moyal(m, u, v)[r].shift_hpow(-r) * w;
  if (!is_invariant_degree0(m, out.c_hat))
    throw ConsistencyError("extract_operators: C^_" + std::to_string(r) + " is not invariant of degree 0");
  return out;
}

LaurentH c_hat(const FlatModel& m, const LaurentH& u, const LaurentH& v, int r) {
  return c_r(m, u, v, r).shift_hpow(-r);
}

NuSeries naive_product(const FlatModel& m, const NuSeries& u, const NuSeries& v) {
  if (u.order() != v.order()) throw InputError("truncation orders differ");
  const int order = u.order();
  NuSeries out(m.ring(), order);
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b)
      for (int r = 0; a + b + r <= order; ++r)
        out[a + b + r] += c_hat(m, u[a], v[b], r) * (1 / (factorial(r) * Scalar(mpz_class(1) << r)));
  return out;
}

AssociatorWitness find_naive_associator(const FlatModel& m, Sampler& s, int max_order, int attempts) {
  AssociatorWitness w;
  for (int t = 0; t < attempts; ++t) {
    LaurentH u = s.invariant_degree0(m, 2, 2), v = s.invariant_degree0(m, 2, 2), x = s.invariant_degree0(m, 2, 2);
    NuSeries su = to_series(m, u, max_order), sv = to_series(m, v, max_order), sx = to_series(m, x, max_order);
    NuSeries assoc = naive_product(m, naive_product(m, su, sv), sx) - naive_product(m, su, naive_product(m, sv, sx));
    int val = assoc.valuation();
    if (val <= max_order) {
      w.found = true;
      w.order = val;
      w.u = u;
      w.v = v;
      w.w = x;
      w.associator = assoc[val];
      return w;
    }
  }
  return w;
}

CheckResult weyl_type_check(const FlatModel& m, int r, const std::vector<LaurentH>& samples) {
  CheckResult res{"weyl_type"};
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      NuSeries u = to_series(m, samples[i], r), v = to_series(m, samples[j], r);
      LaurentH uv = reduced_product(m, u, v)[r], vu = reduced_product(m, v, u)[r];
      if (r % 2) vu = -vu;
      if (uv != vu)
        res.fail("r=" + std::to_string(r) + " samples " + std::to_string(i) + "," + std::to_string(j) + ": diff " +
                 (uv - vu).to_string(m.variable_names()));
    }
  return res;
}

CheckResult naturality_check(const FlatModel& m, int r, const LaurentH& u, const LaurentH& v,
                             const std::vector<LaurentH>& ws) {
  CheckResult res{"naturality"};
  if (static_cast<int>(ws.size()) != r + 1) throw InputError("naturality_check needs r+1 sample functions");
  auto second = [&](const LaurentH& x) { return reduced_product(m, to_series(m, u, r), to_series(m, x, r))[r]; };
  auto first = [&](const LaurentH& x) { return reduced_product(m, to_series(m, x, r), to_series(m, v, r))[r]; };
  LaurentH c2 = nested_commutator(second, v, ws);
  if (!c2.is_zero()) res.fail("second argument, r=" + std::to_string(r) + ": " + c2.to_string(m.variable_names()));
  LaurentH c1 = nested_commutator(first, u, ws);
  if (!c1.is_zero()) res.fail("first argument, r=" + std::to_string(r) + ": " + c1.to_string(m.variable_names()));
  return res;
}

}  // namespace redstar
