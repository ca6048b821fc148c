#pragma once

#include <string>

#include "redstar/flat_model.hpp"

namespace redstar {

/// Parses a real function on the cone. Generators: q<i>, p<i>, H, the
/// complex coordinates z<i> = q<i> + i p<i> and their conjugates zb<i>
/// (also written z̄<i>), the unit i, and re(...), im(...). Operators
/// + - * / ^ and juxtaposition; division only by c H^k.
LaurentH parse_function(const FlatModel& m, const std::string& text);

/// Throws InputError naming the first H-slot of f that is not of S-degree
/// 0 or not X_H-invariant.
void certify_reduced(const FlatModel& m, const LaurentH& f, const std::string& what);

/// parse_function followed by certify_reduced.
LaurentH parse_reduced(const FlatModel& m, const std::string& text, const std::string& what);

}  // namespace redstar
