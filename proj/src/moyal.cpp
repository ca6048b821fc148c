#include "redstar/moyal.hpp"

#include <functional>

namespace redstar {

DerivativeCache::DerivativeCache(LaurentH f) : base_(std::move(f)) {}

const LaurentH& DerivativeCache::get(const std::vector<int>& exps) {
  auto it = cache_.find(exps);
  if (it != cache_.end()) return it->second;
  int last = -1;
  for (int i = static_cast<int>(exps.size()) - 1; i >= 0; --i)
    if (exps[static_cast<std::size_t>(i)] > 0) {
      last = i;
      break;
    }
  if (last < 0) return base_;
  std::vector<int> parent = exps;
  --parent[static_cast<std::size_t>(last)];
  LaurentH d = get(parent).derivative(last);
  return cache_.emplace(exps, std::move(d)).first->second;
}

namespace {

struct Entry {
  int i, j;
  Scalar value;
};

std::vector<Entry> nonzero_entries(const Matrix& P) {
  std::vector<Entry> out;
  for (int i = 0; i < static_cast<int>(P.size()); ++i)
    for (int j = 0; j < static_cast<int>(P[i].size()); ++j)
      if (P[i][j] != 0) out.push_back({i, j, P[i][j]});
  return out;
}

}  // namespace

LaurentH contract_r(const Matrix& P, DerivativeCache& f, DerivativeCache& g, int r) {
  if (r < 0) throw InputError("order must be non-negative");
  const HRingPtr& ring = f.base().ring();
  if (!ring) return f.base();
  if (r == 0) return f.base() * g.base();
  const int N = ring->nvars;
  auto entries = nonzero_entries(P);
  LaurentAccumulator acc(ring);
  std::vector<int> fe(static_cast<std::size_t>(N), 0), ge(static_cast<std::size_t>(N), 0);
  Scalar rfact = factorial(r);

  // Multisets of entries: counts m_e with sum r, weight r!/prod m_e! prod P_e^{m_e}.
  std::function<void(std::size_t, int, Scalar)> rec = [&](std::size_t e, int left, Scalar w) {
    if (left == 0) {
      const LaurentH& df = f.get(fe);
      if (df.is_zero()) return;
      const LaurentH& dg = g.get(ge);
      if (dg.is_zero()) return;
      acc.add_product(df, dg, w * rfact);
      return;
    }
    if (e == entries.size()) return;
    const Entry& en = entries[e];
    Scalar wm = w;
    for (int m = 0; m <= left; ++m) {
      if (m > 0) {
        ++fe[static_cast<std::size_t>(en.i)];
        ++ge[static_cast<std::size_t>(en.j)];
        wm *= en.value;
        wm /= m;
        if (f.get(fe).is_zero() || g.get(ge).is_zero()) {
          fe[static_cast<std::size_t>(en.i)] -= m;
          ge[static_cast<std::size_t>(en.j)] -= m;
          return;
        }
      }
      rec(e + 1, left - m, wm);
      if (m == left) {
        fe[static_cast<std::size_t>(en.i)] -= m;
        ge[static_cast<std::size_t>(en.j)] -= m;
      }
    }
  };
  rec(0, r, Scalar(1));
  return std::move(acc).finish();
}

LaurentH c_r(const FlatModel& m, const LaurentH& f, const LaurentH& g, int r) {
  DerivativeCache cf(f), cg(g);
  return contract_r(m.lambda(), cf, cg, r);
}

NuSeries to_series(const FlatModel& m, const LaurentH& f, int order) { return NuSeries(m.ring(), order, f); }

NuSeries moyal(const FlatModel& m, const NuSeries& f, const NuSeries& g) {
  if (f.order() != g.order()) throw InputError("truncation orders differ");
  const int order = f.order();
  std::vector<DerivativeCache> cf, cg;
  for (int a = 0; a <= order; ++a) {
    cf.emplace_back(f[a]);
    cg.emplace_back(g[a]);
  }
  std::vector<LaurentAccumulator> acc;
  for (int t = 0; t <= order; ++t) acc.emplace_back(m.ring());
  for (int a = 0; a <= order; ++a) {
    if (f[a].is_zero()) continue;
    for (int b = 0; a + b <= order; ++b) {
      if (g[b].is_zero()) continue;
      for (int r = 0; a + b + r <= order; ++r) {
        LaurentH c = contract_r(m.lambda(), cf[static_cast<std::size_t>(a)], cg[static_cast<std::size_t>(b)], r);
        Scalar w = 1 / (factorial(r) * Scalar(mpz_class(1) << r));
        acc[static_cast<std::size_t>(a + b + r)].add(c, w);
      }
    }
  }
  NuSeries out(m.ring(), order);
  for (int t = 0; t <= order; ++t) out[t] = std::move(acc[static_cast<std::size_t>(t)]).finish();
  return out;
}

CheckResult ad_H_check(const FlatModel& m, const NuSeries& f) {
  CheckResult res{"ad_H"};
  const int order = f.order();
  NuSeries big(m.ring(), order + 1);
  for (int r = 0; r <= order; ++r) big[r] = f[r];
  NuSeries h = to_series(m, m.H(), order + 1);
  NuSeries comm = moyal(m, h, big) - moyal(m, big, h);
  if (!comm[0].is_zero()) res.fail("nu^0 coefficient of the commutator: " + comm[0].to_string());
  for (int r = 0; r <= order; ++r) {
    LaurentH expected = m.lie_XH(f[r]);
    if (comm[r + 1] != expected) res.fail("nu^" + std::to_string(r + 1) + ": diff " + (comm[r + 1] - expected).to_string());
    if (!c_r(m, m.H(), f[r], 3).is_zero()) res.fail("C_3(H, f) != 0");
  }
  return res;
}

NuSeries nu_euler(const NuSeries& f) { return f.nu_degree() + f.map([](const LaurentH& c) { return c.lie_S(); }); }

CheckResult nu_euler_check(const FlatModel& m, const NuSeries& f, const NuSeries& g) {
  CheckResult res{"nu_euler"};
  NuSeries lhs = nu_euler(moyal(m, f, g));
  NuSeries rhs = moyal(m, nu_euler(f), g) + moyal(m, f, nu_euler(g));
  for (int r = 0; r <= f.order(); ++r)
    if (lhs[r] != rhs[r]) res.fail("nu^" + std::to_string(r) + ": diff " + (lhs[r] - rhs[r]).to_string());
  return res;
}

CheckResult parity_check(const FlatModel& m, const LaurentH& f, const LaurentH& g, int r) {
  CheckResult res{"parity"};
  LaurentH lhs = c_r(m, f, g, r), rhs = c_r(m, g, f, r);
  if (r % 2) rhs = -rhs;
  if (lhs != rhs) res.fail("r=" + std::to_string(r) + ": diff " + (lhs - rhs).to_string());
  return res;
}

}  // namespace redstar
