#include "redstar/laurent.hpp"

#include <array>
#include <sstream>

namespace redstar {

HRing::HRing(int n, MultiPoly h) : nvars(n), H(std::move(h)) {
  if (H.nvars() != n) throw InputError("H has the wrong variable count");
  if (H.is_zero()) throw InputError("H must be nonzero");
  dH.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dH.push_back(H.derivative(i));
}

HRingPtr make_hring(int nvars, MultiPoly h) { return std::make_shared<const HRing>(nvars, std::move(h)); }

LaurentH::LaurentH(HRingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw InputError("LaurentH needs a ring");
}

LaurentH::LaurentH(HRingPtr ring, std::vector<MultiPoly> slots) : ring_(std::move(ring)), slots_(std::move(slots)) {
  if (!ring_) throw InputError("LaurentH needs a ring");
  for (const auto& p : slots_)
    if (p.nvars() != ring_->nvars) throw InputError("numerator has the wrong variable count");
  normalize();
}

LaurentH LaurentH::from_poly(HRingPtr ring, MultiPoly p) {
  std::vector<MultiPoly> s;
  s.push_back(std::move(p));
  return LaurentH(std::move(ring), std::move(s));
}

LaurentH LaurentH::constant(HRingPtr ring, const Scalar& c) {
  int nv = ring->nvars;
  return from_poly(std::move(ring), MultiPoly::constant(nv, c));
}

LaurentH LaurentH::h_power(HRingPtr ring, int k) {
  int nv = ring->nvars;
  if (k <= 0) return from_poly(ring, ring->H.pow(-k));
  std::vector<MultiPoly> s(static_cast<std::size_t>(k) + 1, MultiPoly(nv));
  s[static_cast<std::size_t>(k)] = MultiPoly::constant(nv, Scalar(1));
  return LaurentH(std::move(ring), std::move(s));
}

const MultiPoly& LaurentH::slot(int k) const {
  static const std::array<MultiPoly, kMaxVars + 1> zeros = [] {
    std::array<MultiPoly, kMaxVars + 1> z;
    for (int i = 0; i <= kMaxVars; ++i) z[static_cast<std::size_t>(i)] = MultiPoly(i);
    return z;
  }();
  if (k < 0 || k >= static_cast<int>(slots_.size())) return zeros[static_cast<std::size_t>(nvars())];
  return slots_[static_cast<std::size_t>(k)];
}

void LaurentH::normalize() {
  for (int k = static_cast<int>(slots_.size()) - 1; k >= 1; --k) {
    auto& p = slots_[static_cast<std::size_t>(k)];
    if (p.is_zero()) continue;
    auto [q, r] = divide_single(p, ring_->H);
    p = std::move(r);
    if (!q.is_zero()) slots_[static_cast<std::size_t>(k) - 1] += q;
  }
  while (!slots_.empty() && slots_.back().is_zero()) slots_.pop_back();
}

void LaurentH::check_ring(const LaurentH& other) const {
  if (ring_ == other.ring_) return;
  if (!ring_ || !other.ring_ || ring_->nvars != other.ring_->nvars || ring_->H != other.ring_->H)
    throw InputError("LaurentH values belong to different models");
}

LaurentH LaurentH::operator-() const {
  LaurentH r = *this;
  for (auto& p : r.slots_) p = -p;
  return r;
}

LaurentH& LaurentH::operator+=(const LaurentH& other) {
  if (!ring_) return *this = other;
  if (!other.ring_) return *this;
  check_ring(other);
  if (other.slots_.size() > slots_.size()) slots_.resize(other.slots_.size(), MultiPoly(ring_->nvars));
  for (std::size_t k = 0; k < other.slots_.size(); ++k) slots_[k] += other.slots_[k];
  // Sums of reduced numerators stay reduced; only zeros need trimming.
  while (!slots_.empty() && slots_.back().is_zero()) slots_.pop_back();
  return *this;
}

LaurentH& LaurentH::operator-=(const LaurentH& other) { return *this += -other; }

LaurentH& LaurentH::operator*=(const Scalar& c) {
  if (c == 0) {
    slots_.clear();
    return *this;
  }
  for (auto& p : slots_) p *= c;
  return *this;
}

LaurentH operator*(const LaurentH& a, const LaurentH& b) {
  if (!a.ring_ || !b.ring_) return a.ring_ ? LaurentH(a.ring_) : LaurentH(b.ring_);
  a.check_ring(b);
  LaurentAccumulator acc(a.ring_);
  acc.add_product(a, b, Scalar(1));
  return std::move(acc).finish();
}

bool operator==(const LaurentH& a, const LaurentH& b) {
  if (a.slots_.size() != b.slots_.size()) return false;
  for (std::size_t k = 0; k < a.slots_.size(); ++k)
    if (a.slots_[k] != b.slots_[k]) return false;
  return true;
}

LaurentH LaurentH::times_poly(const MultiPoly& p) const {
  std::vector<MultiPoly> s;
  s.reserve(slots_.size());
  for (const auto& q : slots_) s.push_back(q * p);
  return LaurentH(ring_, std::move(s));
}

LaurentH LaurentH::shift_hpow(int k) const {
  if (k == 0 || slots_.empty()) return *this;
  if (k > 0) {
    std::vector<MultiPoly> s(static_cast<std::size_t>(k), MultiPoly(ring_->nvars));
    s.insert(s.end(), slots_.begin(), slots_.end());
    return LaurentH(ring_, std::move(s));
  }
  return *this * h_power(ring_, k);
}

LaurentH LaurentH::derivative(int i) const {
  if (!ring_) return *this;
  if (i < 0 || i >= ring_->nvars) throw InputError("derivative index out of range");
  LaurentAccumulator acc(ring_);
  const MultiPoly& dh = ring_->dH[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const auto& p = slots_[k];
    if (p.is_zero()) continue;
    acc.add(static_cast<int>(k), p.derivative(i));
    if (k > 0 && !dh.is_zero()) acc.add(static_cast<int>(k) + 1, p * dh * Scalar(-static_cast<long>(k)));
  }
  return std::move(acc).finish();
}

LaurentH LaurentH::lie_S() const {
  if (!ring_) return *this;
  std::vector<MultiPoly> s;
  s.reserve(slots_.size());
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    // L_S (p H^{-k}) = (deg p / 2 - k) p H^{-k} on homogeneous p.
    MultiPoly e = slots_[k].euler() * Scalar(1, 2);
    e -= slots_[k] * Scalar(static_cast<long>(k));
    s.push_back(std::move(e));
  }
  return LaurentH(ring_, std::move(s));
}

std::vector<LaurentPiece> LaurentH::pieces() const {
  std::vector<LaurentPiece> out;
  for (std::size_t k = 0; k < slots_.size(); ++k)
    for (auto& [d, p] : slots_[k].homogeneous_split()) out.push_back({static_cast<int>(k), d, p});
  return out;
}

bool LaurentH::is_degree_zero() const {
  for (const auto& pc : pieces())
    if (pc.degree != 2 * pc.hpow) return false;
  return true;
}

MultiPoly LaurentH::cleared() const {
  if (slots_.empty()) return ring_ ? MultiPoly(ring_->nvars) : MultiPoly();
  int top = max_hpow();
  MultiPoly out(ring_->nvars);
  for (int k = 0; k <= top; ++k) out += slots_[static_cast<std::size_t>(k)] * ring_->H.pow(top - k);
  return out;
}

bool LaurentH::is_constant() const { return slots_.empty() || (slots_.size() == 1 && slots_[0].is_constant()); }

Scalar LaurentH::constant_value() const {
  if (!is_constant()) throw InputError("LaurentH is not constant");
  return slots_.empty() ? Scalar(0) : slots_[0].constant_term();
}

Scalar LaurentH::evaluate(std::span<const Scalar> point) const {
  Scalar h = ring_->H.evaluate(point);
  if (h == 0 && slots_.size() > 1) throw InputError("evaluation on the zero set of H");
  Scalar sum = 0;
  Scalar hinv_pow = 1;
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (k > 0) hinv_pow /= h;
    sum += slots_[k].evaluate(point) * hinv_pow;
  }
  return sum;
}

std::string LaurentH::to_string(std::span<const std::string> names) const {
  if (slots_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (slots_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << slots_[k].to_string(names) << ")";
    if (k > 0) os << "*H^-" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Past this many pending terms a slot is merged early to bound memory.
constexpr std::size_t kCompactThreshold = 1 << 18;

}  // namespace

TermBuffer& LaurentAccumulator::raw(int hpow) {
  if (static_cast<int>(raw_.size()) <= hpow) raw_.resize(static_cast<std::size_t>(hpow) + 1);
  return raw_[static_cast<std::size_t>(hpow)];
}

void LaurentAccumulator::add(int hpow, const MultiPoly& p) {
  if (p.is_zero()) return;
  if (hpow < 0) {
    add(0, p * ring_->H.pow(-hpow));
    return;
  }
  auto& dst = raw(hpow);
  dst.add_scaled(p.terms(), Scalar(1));
  dst.compact(kCompactThreshold);
}

void LaurentAccumulator::add(const LaurentH& f, const Scalar& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < f.slots().size(); ++k) {
    const auto& p = f.slots()[k];
    if (p.is_zero()) continue;
    auto& dst = raw(static_cast<int>(k));
    dst.add_scaled(p.terms(), c);
    dst.compact(kCompactThreshold);
  }
}

void LaurentAccumulator::add_product(const LaurentH& a, const LaurentH& b, const Scalar& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < a.slots().size(); ++i) {
    const auto& pa = a.slots()[i].terms();
    if (pa.empty()) continue;
    for (std::size_t j = 0; j < b.slots().size(); ++j) {
      const auto& pb = b.slots()[j].terms();
      if (pb.empty()) continue;
      auto& dst = raw(static_cast<int>(i + j));
      dst.add_product(pa, pb, c);
      dst.compact(kCompactThreshold);
    }
  }
}

LaurentH LaurentAccumulator::finish() && {
  std::vector<MultiPoly> slots;
  slots.reserve(raw_.size());
  for (auto& r : raw_) slots.push_back(std::move(r).finish(ring_->nvars));
  raw_.clear();
  return LaurentH(ring_, std::move(slots));
}

}  // namespace redstar
