#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qll/budget.hpp"
#include "qll/io.hpp"

namespace qll {

enum class Verdict { Verified, Falsified, InconclusiveBudget, AnalogDivergence };

const char* to_string(Verdict v);

/// 0 verified, 1 falsified or analog divergence, 2 inconclusive (budget).
int exit_code(Verdict v);

struct TheoremReport {
  struct Check {
    std::string name;
    bool passed = true;
    io::json detail;
  };

  std::string theorem;
  std::vector<std::string> instances;
  Verdict verdict = Verdict::Verified;
  std::vector<Check> checks;
  io::json certificates = io::json::object();
  io::json instance_data = io::json::object();  // factor JSON, so the report is self-contained
  std::string note;
  std::optional<double> elapsed_ms;

  const Check* find(const std::string& name) const;
};

struct VerifyOptions {
  Budgets budgets;
  std::optional<std::string> left;
  std::optional<std::string> right;
  // Re-run empty orthocomplementation searches without the counting shortcut.
  bool exhaustive_ortho = true;
  bool timing = false;
};

/// thm8.6, thm9.1, thm9.4, thm5.x, thm7.5, thm10.4, cnot, p4aut.
std::vector<std::string> theorem_ids();

/// Runs the check pipeline for one theorem. Throws InputError for an unknown
/// id. Budget exhaustion yields an inconclusive verdict, never a pass.
TheoremReport verify(const std::string& theorem_id, const VerifyOptions& options = {});

io::json report_to_json(const TheoremReport& report);

}  // namespace qll
