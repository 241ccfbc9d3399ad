#pragma once

// Registry of named self-checks. Each verifier re-derives one family of
// identities or bounds from scratch at desk scale — exhaustive enumeration
// or exact rational arithmetic wherever feasible — and reports a verdict.
// The command-line `verify` subcommand is a thin wrapper over this table.

#include <functional>
#include <string>
#include <vector>

#include "fixpar/verdict.hpp"

namespace fixpar {

struct VerifyContext {
  std::string p_text = "0.3";  // coin bias; parsed exactly where the check is exact
  int cap = 22;                // exhaustive enumeration ceiling, in bits
  double tol = 1e-9;           // slack for float comparisons
  SamplingOptions sampling{};  // Monte Carlo fallback settings
  int max_tree_vertices = 8;   // depth of the tree survey verifier
  int jobs = 1;
};

struct VerifyOutcome {
  std::string name;
  Verdict verdict = Verdict::unverified;
  long long checks = 0;  // elementary comparisons performed
  std::string detail;    // one-line summary of what was swept
  double wall_ms = 0.0;
};

struct VerifierEntry {
  std::string name;
  std::string summary;
  std::function<VerifyOutcome(const VerifyContext&)> run;
};

// Stable, alphabetically unordered: listed roughly bottom-up by topic.
const std::vector<VerifierEntry>& verifier_registry();

// Null when the name is unknown.
const VerifierEntry* find_verifier(const std::string& name);

// Throws FixparError for unknown names.
VerifyOutcome run_verifier(const std::string& name, const VerifyContext& ctx);

std::vector<VerifyOutcome> run_all_verifiers(const VerifyContext& ctx);

}  // namespace fixpar
