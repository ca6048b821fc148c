#pragma once

#include <map>
#include <vector>

#include "redstar/check.hpp"
#include "redstar/moyal.hpp"
#include "redstar/sampling.hpp"

namespace redstar {

/// S-homogeneous components of f keyed by S-degree. Strict mode: a
/// numerator of odd degree throws InputError.
std::map<int, LaurentH> s_degree_split(const LaurentH& f);

// Classical Koszul data. All act coefficient-wise on series.
LaurentH koszul_classical(const LaurentH& f);
NuSeries koszul_classical(const NuSeries& f);
/// pr_1^* iota^*: each S-degree-d component f_d goes to f_d H^{-d}.
LaurentH restrict_extend(const LaurentH& f);
NuSeries restrict_extend(const NuSeries& f);
LaurentH homotopy_h(const LaurentH& f);
NuSeries homotopy_h(const NuSeries& f);

// Quantum Koszul data.
NuSeries koszul_quantum(const FlatModel& m, const NuSeries& f);
/// (kappa_q - d) f, which has nu-valuation at least one more than f.
NuSeries koszul_difference(const FlatModel& m, const NuSeries& f);
/// sum_j (-(kappa_q - d) h)^j f, the geometric series behind qh and q-iota.
NuSeries koszul_resolvent(const FlatModel& m, const NuSeries& f);
NuSeries quantum_homotopy(const FlatModel& m, const NuSeries& f);
NuSeries quantum_restriction(const FlatModel& m, const NuSeries& f);

struct IdealMembership {
  bool in_classical_ideal;
  bool in_classical_idealizer;
  bool in_quantum_ideal;
  bool in_quantum_idealizer;
};
IdealMembership ideal_predicates(const FlatModel& m, const NuSeries& f);

bool is_invariant_degree0(const FlatModel& m, const NuSeries& f);
bool is_sigma_function(const NuSeries& f);
/// Throws InputError naming the first coefficient that is not invariant of
/// degree 0.
void require_reduced(const FlatModel& m, const NuSeries& u, const char* what);

/// f . psi = q-iota(f * psi).
NuSeries left_action(const FlatModel& m, const NuSeries& f, const NuSeries& psi);
/// psi . u = q-iota(psi * u).
NuSeries right_action(const FlatModel& m, const NuSeries& psi, const NuSeries& u);

/// u *_red v = q-iota(u * v) on pull-backs; throws ConsistencyError when the
/// result is not invariant of degree 0.
NuSeries reduced_product(const FlatModel& m, const NuSeries& u, const NuSeries& v);

struct ReducedOperators {
  LaurentH c_red;
  LaurentH c_hat;
};
/// C_r^red = r! 2^r [nu^r](u *_red v) and C^_r = r! 2^r H^r [nu^r](u * v).
ReducedOperators extract_operators(const FlatModel& m, const NuSeries& u, const NuSeries& v, int r);

/// H^r C_r(u, v) for functions u, v of degree 0.
LaurentH c_hat(const FlatModel& m, const LaurentH& u, const LaurentH& v, int r);
/// sum_r (nu/2)^r / r! C^_r(u, v), extended bilinearly in nu.
NuSeries naive_product(const FlatModel& m, const NuSeries& u, const NuSeries& v);

struct AssociatorWitness {
  bool found = false;
  int order = -1;
  LaurentH u, v, w, associator;
};
/// Searches sampled invariant triples for a nonzero associator of the naive
/// product at nu-order <= max_order.
AssociatorWitness find_naive_associator(const FlatModel& m, Sampler& s, int max_order, int attempts);

/// C_r^red(u, v) = (-1)^r C_r^red(v, u) on every sampled pair.
CheckResult weyl_type_check(const FlatModel& m, int r, const std::vector<LaurentH>& samples);
/// v -> C_r^red(u, v) (and u -> C_r^red(u, v)) has order <= r: the
/// (r+1)-fold nested commutator with multiplication operators vanishes.
CheckResult naturality_check(const FlatModel& m, int r, const LaurentH& u, const LaurentH& v,
                             const std::vector<LaurentH>& ws);
/// Nested commutator sum over subsets S of {0..k-1} of
/// (-1)^{k-|S|} (prod_{i not in S} w_i) D((prod_{i in S} w_i) v).
template <class Op>
LaurentH nested_commutator(const Op& D, const LaurentH& v, const std::vector<LaurentH>& ws) {
  const std::size_t k = ws.size();
  LaurentH total(v.ring());
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    LaurentH inside = v, outside = LaurentH::constant(v.ring(), Scalar(1));
    int size = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t(1) << i)) {
        inside = inside * ws[i];
        ++size;
      } else {
        outside = outside * ws[i];
      }
    }
    LaurentH term = outside * D(inside);
    if ((static_cast<int>(k) - size) % 2) term = -term;
    total += term;
  }
  return total;
}

}  // namespace redstar
