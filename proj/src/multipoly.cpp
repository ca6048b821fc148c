#include "redstar/multipoly.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <sstream>

namespace redstar {

Scalar parse_scalar(const std::string& text) {
  Scalar q;
  if (q.set_str(text, 10) != 0) throw InputError("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw InputError("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

Scalar factorial(int k) {
  mpz_class r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return Scalar(r);
}

Scalar binomial(int n, int k) {
  if (k < 0 || k > n) return Scalar(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar(r);
}

// ---------------------------------------------------------------------------

Monomial::Monomial(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw InputError("too many variables");
  for (std::size_t i = 0; i < exps.size(); ++i) set(static_cast<int>(i), exps[i]);
}

void Monomial::set(int i, int e) {
  if (e < 0 || e > 255) throw InputError("exponent out of range");
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
  exps_[i] = static_cast<std::uint8_t>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exps_[i] + other.exps_[i];
    if (e > 255) throw InputError("exponent overflow");
    r.exps_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
  return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.exps_[i] = static_cast<std::uint8_t>(exps_[i] - divisor.exps_[i]);
  r.degree_ = static_cast<std::uint16_t>(degree_ - divisor.degree_);
  return r;
}

std::size_t Monomial::hash() const {
  std::uint64_t lo, hi;
  std::memcpy(&lo, exps_.data(), 8);
  std::memcpy(&hi, exps_.data() + 8, 8);
  std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> out(static_cast<std::size_t>(nvars));
  for (int i = 0; i < nvars; ++i) out[i] = exps_[i];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool term_greater(const Term& a, const Term& b) { return b.mono < a.mono; }

// Merges two descending term lists, sign = +1 or -1 applied to b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (b[j].mono < a[i].mono) {
      out.push_back(a[i++]);
    } else if (a[i].mono < b[j].mono) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Scalar(-b[j].coeff)});
      ++j;
    } else {
      Scalar c = sign > 0 ? Scalar(a[i].coeff + b[j].coeff) : Scalar(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Scalar(-b[j].coeff)});
  return out;
}

}  // namespace

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVars) throw InputError("variable count out of range");
}

MultiPoly MultiPoly::constant(int nvars, const Scalar& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw InputError("variable index out of range");
  MultiPoly p(nvars);
  Monomial m;
  m.set(i, 1);
  p.terms_.push_back({m, Scalar(1)});
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, std::span<const int> exps, const Scalar& c) {
  if (static_cast<int>(exps.size()) != nvars) throw InputError("exponent vector length mismatch");
  MultiPoly p(nvars);
  if (c != 0) p.terms_.push_back({Monomial(exps), c});
  return p;
}

MultiPoly MultiPoly::from_terms(int nvars, std::vector<Term> terms) {
  MultiPoly p(nvars);
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw InputError("leading term of zero polynomial");
  return terms_.front();
}

int MultiPoly::degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

bool MultiPoly::is_homogeneous() const {
  return terms_.empty() || terms_.front().mono.degree() == terms_.back().mono.degree();
}

Scalar MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.degree() == 0) return terms_.back().coeff;
  return Scalar(0);
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0); }

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (nvars_ != other.nvars_) throw InputError("mismatched variable counts");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_compatible(other);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, +1);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_compatible(other);
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.nvars_);
  if (b.terms_.size() == 1 && b.terms_[0].mono.degree() == 0) return a * b.terms_[0].coeff;
  if (a.terms_.size() == 1 && a.terms_[0].mono.degree() == 0) return b * a.terms_[0].coeff;
  TermBuffer buf;
  buf.add_product(a.terms_, b.terms_, Scalar(1));
  return std::move(buf).finish(a.nvars_);
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

MultiPoly MultiPoly::derivative(int i) const {
  if (i < 0 || i >= nvars_) throw InputError("derivative index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    int e = t.mono[i];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(i, e - 1);
    out.push_back({m, t.coeff * e});
  }
  // Lowering one exponent keeps grlex order within a fixed degree but may
  // interleave degrees, so re-sort.
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::euler() const {
  MultiPoly r = *this;
  std::vector<Term> kept;
  for (auto& t : r.terms_) {
    if (t.mono.degree() == 0) continue;
    t.coeff *= t.mono.degree();
    kept.push_back(std::move(t));
  }
  r.terms_ = std::move(kept);
  return r;
}

std::map<int, MultiPoly> MultiPoly::homogeneous_split() const {
  std::map<int, MultiPoly> out;
  for (const auto& t : terms_) {
    auto [it, inserted] = out.try_emplace(t.mono.degree(), nvars_);
    it->second.terms_.push_back(t);  // already in descending order
  }
  return out;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw InputError("negative polynomial power");
  MultiPoly result = constant(nvars_, Scalar(1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Scalar MultiPoly::evaluate(std::span<const Scalar> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw InputError("evaluation point has wrong length");
  Scalar sum = 0;
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < t.mono[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1) && t.mono.degree() > 0;
    if (!unit) os << c.get_str();
    bool need_star = !unit;
    for (int i = 0; i < nvars_; ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      if (static_cast<std::size_t>(i) < names.size())
        os << names[i];
      else
        os << "x" << i;
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

DivisionResult divide_single(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw InputError("division by the zero polynomial");
  if (f.nvars() != g.nvars()) throw InputError("mismatched variable counts");
  const int nv = f.nvars();
  const Term& lead = g.leading_term();

  std::map<Monomial, Scalar, std::greater<>> work;
  for (const auto& t : f.terms()) work.emplace(t.mono, t.coeff);

  std::vector<Term> quot, rem;
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    Scalar c = it->second;
    work.erase(it);
    if (!lead.mono.divides(m)) {
      rem.push_back({m, c});
      continue;
    }
    Monomial qm = m.quotient(lead.mono);
    Scalar qc = c / lead.coeff;
    quot.push_back({qm, qc});
    // Subtract qc*qm*g minus its leading term (which cancels c*m exactly).
    for (std::size_t k = 1; k < g.terms().size(); ++k) {
      const Term& gt = g.terms()[k];
      Monomial pm = qm * gt.mono;
      auto [w, inserted] = work.try_emplace(pm, 0);
      w->second -= qc * gt.coeff;
      if (w->second == 0) work.erase(w);
    }
  }
  return {MultiPoly::from_terms(nv, std::move(quot)), MultiPoly::from_terms(nv, std::move(rem))};
}

namespace {

using i128 = __int128;
constexpr std::int64_t kSmallBound = std::int64_t(1) << 31;

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t uabs(std::int64_t x) { return x < 0 ? std::uint64_t(0) - std::uint64_t(x) : std::uint64_t(x); }

bool fits_small(const Scalar& c, std::int64_t& num, std::int64_t& den) {
  const mpz_class& n = c.get_num();
  const mpz_class& d = c.get_den();
  if (!n.fits_slong_p() || !d.fits_slong_p()) return false;
  num = n.get_si();
  den = d.get_si();
  return num > -kSmallBound && num < kSmallBound && den < kSmallBound;
}

struct Coeffs {
  std::vector<std::int64_t> num, den;
  std::vector<char> ok;
};

Coeffs small_coeffs(const std::vector<Term>& a, const Scalar* c) {
  Coeffs out;
  out.num.resize(a.size());
  out.den.resize(a.size());
  out.ok.resize(a.size());
  Scalar w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (c) {
      w = a[i].coeff * *c;
      out.ok[i] = fits_small(w, out.num[i], out.den[i]);
    } else {
      out.ok[i] = fits_small(a[i].coeff, out.num[i], out.den[i]);
    }
  }
  return out;
}

}  // namespace

void TermBuffer::grow() {
  std::vector<Slot> old = std::move(table_);
  table_.assign(old.empty() ? 64 : old.size() * 2, Slot{});
  used_ = 0;
  for (const auto& e : old)
    if (e.den != 0) insert_small(e.mono, e.num, e.den);
}

void TermBuffer::insert_small(const Monomial& m, std::int64_t num, std::int64_t den) {
  if (2 * (used_ + 1) > table_.size()) grow();
  const std::size_t mask = table_.size() - 1;
  std::size_t i = m.hash() & mask;
  while (table_[i].den != 0 && !(table_[i].mono == m)) i = (i + 1) & mask;
  Slot& e = table_[i];
  if (e.den == 0) {
    e = {m, num, den};
    ++used_;
    return;
  }
  if (e.den == den) {
    std::int64_t sum;
    if (!__builtin_add_overflow(e.num, num, &sum)) {
      e.num = sum;
      return;
    }
  } else {
    const i128 g = static_cast<i128>(gcd64(static_cast<std::uint64_t>(e.den), static_cast<std::uint64_t>(den)));
    i128 nn = static_cast<i128>(e.num) * (den / g) + static_cast<i128>(num) * (e.den / g);
    i128 nd = static_cast<i128>(e.den / g) * den;
    const auto r = static_cast<i128>(gcd128(static_cast<unsigned __int128>(nn < 0 ? -nn : nn), static_cast<unsigned __int128>(nd)));
    if (r > 1) {
      nn /= r;
      nd /= r;
    }
    const i128 lim = i128(1) << 62;
    if (nn < lim && nn > -lim && nd < lim) {
      e.num = static_cast<std::int64_t>(nn);
      e.den = static_cast<std::int64_t>(nd);
      return;
    }
  }
  big_.push_back({m, Scalar(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)))});
}

void TermBuffer::push(const Monomial& m, const Scalar& c) {
  std::int64_t n, d;
  if (fits_small(c, n, d))
    insert_small(m, n, d);
  else
    big_.push_back({m, c});
}

void TermBuffer::add_scaled(const std::vector<Term>& a, const Scalar& c) {
  if (c == 0) return;
  if (c == 1) {
    for (const auto& t : a) push(t.mono, t.coeff);
    return;
  }
  Scalar w;
  for (const auto& t : a) {
    w = t.coeff * c;
    push(t.mono, w);
  }
}

void TermBuffer::add_product(const std::vector<Term>& a, const std::vector<Term>& b, const Scalar& c) {
  if (c == 0 || a.empty() || b.empty()) return;
  Coeffs ca = small_coeffs(a, c == 1 ? nullptr : &c), cb = small_coeffs(b, nullptr);
  Scalar w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      Monomial mono = a[i].mono * b[j].mono;
      if (ca.ok[i] && cb.ok[j]) {
        std::int64_t an = ca.num[i], ad = ca.den[i], bn = cb.num[j], bd = cb.den[j];
        auto g1 = static_cast<std::int64_t>(gcd64(uabs(an), static_cast<std::uint64_t>(bd)));
        auto g2 = static_cast<std::int64_t>(gcd64(uabs(bn), static_cast<std::uint64_t>(ad)));
        insert_small(mono, (an / g1) * (bn / g2), (ad / g2) * (bd / g1));
      } else {
        w = a[i].coeff * b[j].coeff;
        if (c != 1) w *= c;
        big_.push_back({mono, w});
      }
    }
  }
}

void TermBuffer::compact(std::size_t threshold) {
  if (big_.size() >= threshold) big_ = MultiPoly::from_terms(0, std::move(big_)).terms_;
}

MultiPoly TermBuffer::finish(int nvars) && {
  std::vector<Term> terms = std::move(big_);
  for (const auto& e : table_)
    if (e.den != 0 && e.num != 0) {
      Scalar q(mpz_class(static_cast<long>(e.num)), mpz_class(static_cast<long>(e.den)));
      q.canonicalize();
      terms.push_back({e.mono, std::move(q)});
    }
  table_.clear();
  used_ = 0;
  return MultiPoly::from_terms(nvars, std::move(terms));
}

}  // namespace redstar
