#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "redstar/scalar.hpp"

namespace redstar {

inline constexpr int kMaxVars = 16;

/// Exponent vector packed into a fixed array. Ordering is graded
/// lexicographic with x0 > x1 > ... ; this is the term order used for
/// division.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const int> exps);

  int operator[](int i) const { return exps_[i]; }
  int degree() const { return degree_; }

  void set(int i, int e);
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient(const Monomial& divisor) const;

  std::vector<int> exponents(int nvars) const;
  std::size_t hash() const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  /// Graded-lex comparison: true when a is strictly smaller than b.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.exps_ < b.exps_;
  }
  friend bool operator>(const Monomial& a, const Monomial& b) { return b < a; }

 private:
  std::array<std::uint8_t, kMaxVars> exps_{};
  std::uint16_t degree_ = 0;
};

/// gmpxx's rational move constructor is not noexcept, which would make
/// vectors copy coefficients on reallocation; Term moves by swapping.
struct Term {
  Monomial mono;
  Scalar coeff;

  Term() = default;
  Term(const Monomial& m, Scalar c) : mono(m) { mpq_swap(coeff.get_mpq_t(), c.get_mpq_t()); }
  Term(const Term&) = default;
  Term(Term&& o) noexcept : mono(o.mono) { mpq_swap(coeff.get_mpq_t(), o.coeff.get_mpq_t()); }
  Term& operator=(const Term&) = default;
  Term& operator=(Term&& o) noexcept {
    mono = o.mono;
    mpq_swap(coeff.get_mpq_t(), o.coeff.get_mpq_t());
    return *this;
  }
};

/// Sparse multivariate polynomial over the rationals. Terms are stored
/// without zero coefficients, sorted by descending graded-lex order, so
/// equality is plain term-wise comparison.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int nvars);

  static MultiPoly constant(int nvars, const Scalar& c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(int nvars, std::span<const int> exps, const Scalar& c);
  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static MultiPoly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Constant term value (zero when absent).
  Scalar constant_term() const;
  bool is_constant() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Scalar& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
  friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly derivative(int i) const;
  /// Multiplies every term by its own total degree (the Euler operator).
  MultiPoly euler() const;
  /// Homogeneous components keyed by total degree.
  std::map<int, MultiPoly> homogeneous_split() const;
  MultiPoly pow(int e) const;

  /// Substitutes x_i -> value for every variable, exact.
  Scalar evaluate(std::span<const Scalar> point) const;

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  friend class TermBuffer;
  void check_compatible(const MultiPoly& other) const;

  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Unsorted term collector. Coefficients with small numerator and
/// denominator are multiplied and summed in machine integers; anything
/// larger falls back to GMP.
class TermBuffer {
 public:
  void push(const Monomial& m, const Scalar& c);
  /// Adds c * a.
  void add_scaled(const std::vector<Term>& a, const Scalar& c);
  /// Adds c * a * b.
  void add_product(const std::vector<Term>& a, const std::vector<Term>& b, const Scalar& c);
  /// Merges GMP-backed duplicates once there are many.
  void compact(std::size_t threshold);
  MultiPoly finish(int nvars) &&;

 private:
  struct Slot {
    Monomial mono;
    std::int64_t num = 0;
    std::int64_t den = 0;
  };
  void insert_small(const Monomial& m, std::int64_t num, std::int64_t den);
  void grow();

  std::vector<Slot> table_;
  std::size_t used_ = 0;
  std::vector<Term> big_;
};

struct DivisionResult {
  MultiPoly quotient;
  MultiPoly remainder;
};

/// Single-divisor multivariate division in graded-lex order. The remainder
/// has no term divisible by the leading monomial of g, so it is the unique
/// normal form of f modulo the principal ideal (g).
DivisionResult divide_single(const MultiPoly& f, const MultiPoly& g);

}  // namespace redstar
