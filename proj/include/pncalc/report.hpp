#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pncalc/tensor.hpp"

namespace pncalc {

enum class CheckStatus { Pass, Fail, Skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
  }
  return "?";
}

/// Result of one numeric cross-validation run (see the oracle header).
struct OracleOutcome {
  bool pass = false;
  double max_deviation = 0.0;
  int points = 0;
  std::string worst_point;  ///< printed sample point of the worst deviation
};

/// One named verdict. A mandatory check must Pass for the enclosing report
/// to pass; Skip means the check could not run (e.g. its precondition
/// failed) and counts as not-passed when mandatory.
struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Skip;
  bool mandatory = true;
  std::optional<Witness> witness;   ///< present for every Fail
  std::optional<OracleOutcome> oracle;
  std::string note;                 ///< free-form annotation
  double elapsed_ms = 0.0;          ///< wall clock of this check's oracle run

  static Check from_zero_test(std::string name, bool zero,
                              std::optional<Witness> w) {
    Check c;
    c.name = std::move(name);
    c.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
    if (!zero) c.witness = std::move(w);
    return c;
  }

  static Check skipped(std::string name, std::string why) {
    Check c;
    c.name = std::move(name);
    c.status = CheckStatus::Skip;
    c.note = std::move(why);
    return c;
  }
};

/// Ordered list of verdicts for one structure.
struct StructureReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;  ///< report-level annotations

  void add(Check c) { checks.push_back(std::move(c)); }

  /// Appends another report's checks under a name prefix.
  void merge(const std::string& prefix, const StructureReport& sub) {
    for (Check c : sub.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (const auto& n : sub.notes) notes.push_back(n);
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  bool overall_pass() const {
    for (const auto& c : checks)
      if (c.mandatory && c.status != CheckStatus::Pass) return false;
    return true;
  }
};

}  // namespace pncalc
