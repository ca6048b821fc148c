#include "redstar/serialize.hpp"

namespace redstar {

Json to_json(const MultiPoly& p) {
  Json out = Json::array();
  for (const Term& t : p.terms())
    out.push_back({{"exp", t.mono.exponents(p.nvars())},
                   {"num", t.coeff.get_num().get_str()},
                   {"den", t.coeff.get_den().get_str()}});
  return out;
}

Json to_json(const LaurentH& f) {
  Json out = Json::array();
  for (int k = 0; k <= f.max_hpow(); ++k)
    if (!f.slot(k).is_zero()) out.push_back({{"hpow", k}, {"poly", to_json(f.slot(k))}});
  return out;
}

Json to_json(const NuSeries& f) {
  Json out = Json::array();
  for (int r = 0; r <= f.order(); ++r) out.push_back({{"nu", r}, {"value", to_json(f[r])}});
  return out;
}

Json to_json(const FlatModel& m) { return {{"n", m.n()}, {"signature", m.signature()}}; }

Json to_json(const CheckResult& c) { return {{"check", c.name}, {"pass", c.pass}, {"witness", c.witness}}; }

MultiPoly multipoly_from_json(const Json& j, int nvars) {
  if (!j.is_array()) throw InputError("polynomial must be a JSON array");
  std::vector<Term> terms;
  for (const Json& t : j) {
    auto exps = t.at("exp").get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != nvars) throw InputError("exponent vector has wrong length");
    for (int e : exps)
      if (e < 0 || e > 255) throw InputError("exponent out of range");
    Scalar c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
    if (c.get_den() == 0) throw InputError("zero denominator");
    c.canonicalize();
    terms.emplace_back(Monomial(exps), c);
  }
  return MultiPoly::from_terms(nvars, std::move(terms));
}

LaurentH laurent_from_json(const Json& j, const HRingPtr& ring) {
  if (!j.is_array()) throw InputError("LaurentH must be a JSON array");
  LaurentH out(ring);
  for (const Json& s : j) {
    int k = s.at("hpow").get<int>();
    if (k < 0) throw InputError("negative hpow");
    out += LaurentH::h_power(ring, k).times_poly(multipoly_from_json(s.at("poly"), ring->nvars));
  }
  return out;
}

NuSeries series_from_json(const Json& j, const HRingPtr& ring, int order) {
  if (!j.is_array()) throw InputError("series must be a JSON array");
  NuSeries out(ring, order);
  for (const Json& c : j) {
    int r = c.at("nu").get<int>();
    if (r < 0 || r > order) throw InputError("nu index out of range");
    out[r] += laurent_from_json(c.at("value"), ring);
  }
  return out;
}

FlatModel model_from_json(const Json& j) {
  return build_model(j.at("n").get<int>(), j.at("signature").get<std::vector<int>>());
}

}  // namespace redstar
