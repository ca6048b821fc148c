#pragma once

#include "json.hpp"
#include "redstar/check.hpp"
#include "redstar/flat_model.hpp"

namespace redstar {

using Json = nlohmann::json;

/// Terms in descending graded-lex order as {"exp", "num", "den"}.
Json to_json(const MultiPoly& p);
/// Nonzero slots as {"hpow", "poly"}.
Json to_json(const LaurentH& f);
/// Every coefficient as {"nu", "value"}.
Json to_json(const NuSeries& f);
/// {"n", "signature"}.
Json to_json(const FlatModel& m);
/// {"check", "pass", "witness"}.
Json to_json(const CheckResult& c);

MultiPoly multipoly_from_json(const Json& j, int nvars);
LaurentH laurent_from_json(const Json& j, const HRingPtr& ring);
NuSeries series_from_json(const Json& j, const HRingPtr& ring, int order);
FlatModel model_from_json(const Json& j);

}  // namespace redstar
