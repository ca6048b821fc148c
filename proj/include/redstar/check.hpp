#pragma once

#include <string>
#include <utility>

namespace redstar {

/// Outcome of one exact identity check. `witness` names the first
/// component that failed and the nonzero difference found there.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::string witness;

  explicit operator bool() const { return pass; }

  /// Records the first failure only.
  void fail(const std::string& where) {
    if (pass) witness = where;
    pass = false;
  }
  void merge(const CheckResult& other) {
    if (!other.pass) fail(other.name + ": " + other.witness);
  }
};

}  // namespace redstar
