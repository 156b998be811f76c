#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clauseforge/oracle.hpp"
#include "clauseforge/task.hpp"

namespace clauseforge {

struct ParsedAnswer {
  bool ok = false;
  std::string error;  // set when !ok
  TaskKind kind = TaskKind::kEntailment;
  bool truth = false;                        // entailment
  std::vector<int> indices;                  // selection, sorted, deduplicated
  std::vector<std::array<int, 3>> triples;   // reconstruction
};

// Lenient extraction: entailment wants exactly one case-insensitive
// True/False token; selection wants an integer list, bracketed or bare;
// reconstruction wants one `c <- p1, p2` step per non-blank line.
ParsedAnswer parse_answer(TaskKind kind, const std::string& text);

struct StepVerdict {
  std::array<int, 3> triple{0, 0, 0};
  VerdictKind verdict = VerdictKind::kResourceOut;
};

struct GradeReport {
  double score = 0.0;
  bool structural_ok = true;
  std::vector<StepVerdict> step_verdicts;      // reconstruction only
  std::optional<std::string> failure_reason;
  bool flagged = false;  // an oracle step ran out of resources
};

GradeReport grade_entailment(const EntailmentTask& task, const std::string& answer_text);

// Exact set match, order and whitespace insensitive.
GradeReport grade_selection(const SelectionTask& task, const std::string& answer_text);

struct ReconstructionGradeOptions {
  // Strict mode also requires every listed clause to appear somewhere in
  // the proposed structure.
  bool strict_all_used = true;
};

// Two stages: structural coherence (acyclic, each child derived once from
// two distinct in-range parents, all clauses used when strict) scoring 0
// on failure; then per-step oracle soundness, scored against the ground
// truth step count. An indefinite oracle step counts as unsound and flags
// the report.
GradeReport grade_reconstruction(const ReconstructionTask& task,
                                 const std::string& answer_text,
                                 const EntailmentOracle& oracle,
                                 const ReconstructionGradeOptions& options = {});

GradeReport grade(const TaskInstance& task, const std::string& answer_text,
                  const EntailmentOracle& oracle,
                  const ReconstructionGradeOptions& options = {});

}  // namespace clauseforge
