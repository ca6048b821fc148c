#pragma once

#include <map>
#include <vector>

#include "redstar/check.hpp"
#include "redstar/linalg.hpp"
#include "redstar/multipoly.hpp"
#include "redstar/sampling.hpp"

namespace redstar {

/// Chart of an m-dimensional symplectic manifold with constant ω₀ and a
/// symplectic torsion-free connection given by totally symmetric Γ_{ijk}.
/// Every polynomial lives in one ring of 3m+1 variables laid out as
/// x (positions), y (derivative markers of operators), λ, p (momenta).
class ChartModel {
 public:
  /// gamma_lower[(i*m+j)*m+k] = Γ_{ijk}; must be totally symmetric.
  ChartModel(int m, Matrix omega, std::vector<MultiPoly> gamma_lower);

  int m() const { return m_; }
  int nvars() const { return 3 * m_ + 1; }
  int x(int i) const { return i; }
  int y(int i) const { return m_ + i; }
  int lambda() const { return 2 * m_; }
  int p(int i) const { return 2 * m_ + 1 + i; }

  const Matrix& omega() const { return omega_; }
  const Matrix& omega_inv() const { return omega_inv_; }
  const MultiPoly& gamma_lower(int i, int j, int k) const { return lower_[idx(i, j, k)]; }
  /// Γ^k_{ij}.
  const MultiPoly& gamma(int k, int i, int j) const { return upper_[idx(k, i, j)]; }

  MultiPoly zero() const { return MultiPoly(nvars()); }
  MultiPoly constant(const Scalar& c) const { return MultiPoly::constant(nvars(), c); }
  MultiPoly var(int v) const { return MultiPoly::variable(nvars(), v); }

 private:
  std::size_t idx(int a, int b, int c) const { return static_cast<std::size_t>((a * m_ + b) * m_ + c); }

  int m_;
  Matrix omega_, omega_inv_;
  std::vector<MultiPoly> lower_, upper_;
};

/// Standard ω₀ = [[0, I], [-I, 0]].
Matrix standard_omega(int m);
ChartModel flat_chart(int m);
/// Random totally symmetric Γ_{ijk} of degree <= max_deg in x.
ChartModel random_chart(Sampler& s, int m, int max_deg, int terms);
/// Total symmetry of Γ_{ijk}, torsion-freeness and ∇ω₀ = 0 from Γ^k_{ij}.
CheckResult chart_invariants(const ChartModel& c);

/// Symmetric tensor field keyed by sorted index tuples. The same container
/// holds covariant and contravariant fields.
struct SymTensor {
  int grade = 0;
  std::map<std::vector<int>, MultiPoly> comps;

  /// Component at any index tuple (sorted internally); zero when absent.
  MultiPoly at(const ChartModel& c, std::vector<int> idx) const;
  void set(std::vector<int> idx, MultiPoly v);
};

/// All sorted index tuples of length k over m indices.
std::vector<std::vector<int>> sorted_tuples(int m, int k);

/// Grade-0 covariant tensor holding u.
SymTensor scalar_tensor(const MultiPoly& u);
/// Symmetrized covariant derivative as the sum over slots.
SymTensor sym_d(const SymTensor& gamma, const ChartModel& c);
/// Covariant divergence of a contravariant symmetric tensor.
SymTensor divergence(const SymTensor& t, const ChartModel& c);

/// Universal momentum map J: T ↦ T(p, ..., p)/k!.
MultiPoly symbol_of(const SymTensor& t, const ChartModel& c);
/// Grade-k part of a λ-free symbol as a tensor.
SymTensor tensor_of(const MultiPoly& symbol, int grade, const ChartModel& c);
/// Degree in the momenta; -1 for zero.
int symbol_grade(const MultiPoly& symbol, const ChartModel& c);

/// Vertical Laplacian, computed grade by grade as J ∘ div ∘ J⁻¹.
MultiPoly vertical_laplacian(const MultiPoly& symbol, const ChartModel& c);
/// Coordinate form ∂²/∂x^i∂p_i + p_k Γ^k_{ij} ∂²/∂p_i∂p_j + Γ^i_{ij} ∂/∂p_j.
MultiPoly vertical_laplacian_local(const MultiPoly& symbol, const ChartModel& c);

struct Curvature {
  /// riemann[((l*m+k)*m+i)*m+j] = R^l_{kij}, R(∂_i, ∂_j)∂_k = R^l_{kij} ∂_l.
  std::vector<MultiPoly> riemann;
  /// ric[i*m+j] = Ric_{ij} = R^a_{jai}.
  std::vector<MultiPoly> ric;
  /// rho[a*m+b] = ϱ^a_b with Ric(X, Y) = ω(X, ϱY).
  std::vector<MultiPoly> rho;
};

Curvature curvature_and_ricci(const ChartModel& c);
/// Ric♯ with both indices raised by ω₀.
SymTensor ricci_sharp(const std::vector<MultiPoly>& ric, const ChartModel& c);
/// True iff R equals the Ricci-type combination built from ϱ = ω⁻¹Ric.
bool ricci_type_predicate(const std::vector<MultiPoly>& riemann, const std::vector<MultiPoly>& ric, const Matrix& omega);
/// The Ricci-type curvature combination built from ϱ.
std::vector<MultiPoly> ricci_type_curvature(const std::vector<MultiPoly>& rho, const Matrix& omega);

/// Pointwise divergence identities for Ricci-type hypothesis data: with
/// ∇ϱ, ∇U given by the hypothesis equations, checks div Ric♯ = U and
/// div² Ric♯ = div U = -(2n+1)/(2(n+1)) K + 2(n+1) f.
CheckResult ricci_divergence_identities(const Matrix& rho, const std::vector<Scalar>& U, const Scalar& f, const Scalar& K,
                                        const Matrix& omega);

/// Ric^{ij}(∂_i∂_j u - Γ^k_{ij} ∂_k u).
MultiPoly delta_ric_chart(const MultiPoly& u, const ChartModel& c, const std::vector<MultiPoly>& ric);

/// Differential operator Σ a_α ∂^α stored as its normal-ordered symbol
/// Σ a_α y^α; coefficients are polynomials in x and λ.
class PolyDiffOp {
 public:
  explicit PolyDiffOp(const ChartModel& c);
  PolyDiffOp(const ChartModel& c, MultiPoly symbol);

  static PolyDiffOp multiplication(const ChartModel& c, const MultiPoly& a);
  static PolyDiffOp partial(const ChartModel& c, int i);
  /// u ↦ X^i ∂_i u.
  static PolyDiffOp lie(const ChartModel& c, const std::vector<MultiPoly>& X);

  const MultiPoly& symbol() const { return sym_; }
  int order() const;
  bool is_zero() const { return sym_.is_zero(); }

  MultiPoly apply(const MultiPoly& u) const;
  PolyDiffOp compose(const PolyDiffOp& other) const;
  /// λ ↦ -λ.
  PolyDiffOp conjugate() const;
  /// Exact division by λ^k; InputError if some coefficient is not divisible.
  PolyDiffOp divide_lambda(int k) const;

  PolyDiffOp& operator+=(const PolyDiffOp& o);
  PolyDiffOp& operator-=(const PolyDiffOp& o);
  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
  friend PolyDiffOp operator*(const Scalar& s, PolyDiffOp a) {
    a.sym_ *= s;
    return a;
  }
  friend bool operator==(const PolyDiffOp& a, const PolyDiffOp& b) { return a.sym_ == b.sym_; }
  friend bool operator!=(const PolyDiffOp& a, const PolyDiffOp& b) { return !(a == b); }

  std::string to_string() const;

 private:
  int m_;
  MultiPoly sym_;
};

/// Transpose against the constant Liouville volume, with λ ↦ -λ.
PolyDiffOp formal_adjoint(const PolyDiffOp& d, const ChartModel& c);
/// λ ↦ -λ on a symbol.
MultiPoly conjugate_symbol(const MultiPoly& f, const ChartModel& c);

/// Standard-ordered quantization Σ_r (-λ)^r/r! f_r(∂_ξ) D^r, where D^r u
/// is SymD^r u / r! written as a polynomial in ξ.
PolyDiffOp std_quantize(const MultiPoly& symbol, const ChartModel& c);
/// exp(-κλΔ) on a symbol (a finite sum).
MultiPoly exp_laplacian(const MultiPoly& symbol, const Scalar& kappa, const ChartModel& c);
PolyDiffOp kappa_quantize(const MultiPoly& symbol, const Scalar& kappa, const ChartModel& c);

/// Δ_Ric as an operator.
PolyDiffOp delta_ric_op(const ChartModel& c, const std::vector<MultiPoly>& ric);

/// Formal self-adjointness.
bool is_symmetric_op(const PolyDiffOp& d, const ChartModel& c);
/// Δ_Ric + L_{div Ric♯} + ¼ div² Ric♯ and Δ_Ric + L_{div Ric♯} are symmetric.
CheckResult symmetric_riccian_check(const ChartModel& c, const std::vector<MultiPoly>& ric);
/// (2/λ²) ϱ_κ(J(Ric♯)) = Δ_Ric + 2κ L_{div Ric♯} + κ² div² Ric♯.
CheckResult kappa_riccian_check(const ChartModel& c, const std::vector<MultiPoly>& ric, const Scalar& kappa);
/// ϱ_κ(f)† = ϱ_κ(exp(-λ(1-2κ)Δ) f̄).
CheckResult adjoint_relation_check(const ChartModel& c, const MultiPoly& symbol, const Scalar& kappa);
/// ∂_ξ^β D^r u agrees with the sum-over-slots SymD^r u.
CheckResult sym_d_agreement_check(const ChartModel& c, const MultiPoly& u, int r);
/// On a flat chart, ϱ_W(f)ϱ_W(g) = ϱ_W(f ⋆ g) with the Moyal product of
/// T*R^m computed by the moyal engine (ν = λ).
CheckResult weyl_moyal_bridge_check(const ChartModel& c, const MultiPoly& f, const MultiPoly& g);

/// Random symbol of grade <= max_grade with x-degree <= max_deg.
MultiPoly random_symbol(Sampler& s, const ChartModel& c, int max_grade, int max_deg, int terms);

}  // namespace redstar
