#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clauseforge/prover.hpp"

namespace clauseforge {

class ProcessError : public std::runtime_error {
 public:
  explicit ProcessError(const std::string& message) : std::runtime_error(message) {}
};

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;  // combined stdout
};

// Runs argv[0] with the given arguments, capturing stdout. Kills the
// process at the deadline and returns whatever it flushed. Throws
// ProcessError when the process cannot be spawned.
ProcessResult run_process(const std::vector<std::string>& argv, double timeout_s);

struct ExternalProverConfig {
  std::string executable;
  // Whitespace-separated argument templates; `{file}` and `{timeout}`
  // (integer seconds) are substituted per token.
  std::string saturation_args = "--mode saturate --timeout-s {timeout} {file}";
  std::string entailment_args = "--mode refute --timeout-s {timeout} {file}";
  std::string dialect = "tstp";
  ProverLimits limits;

  // Throws when the executable cannot be found (checked at pipeline start
  // when external mode is selected).
  void validate() const;
};

// Invokes the external prover in saturation mode on an axiom file and
// parses its TSTP derivation into records. A timeout yields the partial
// output the prover flushed (complete = false).
SaturationOutput run_external_saturation(const std::string& axiom_file,
                                         const ExternalProverConfig& config);

// Writes premises plus the negated conjecture to a temp file, runs the
// external prover, and maps its SZS status to a verdict.
Verdict check_entailment_external(const std::vector<Clause>& premises,
                                  const Clause& conjecture,
                                  const ExternalProverConfig& config);

}  // namespace clauseforge
