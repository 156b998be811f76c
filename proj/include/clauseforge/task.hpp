#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "clauseforge/graph.hpp"
#include "clauseforge/oracle.hpp"
#include "clauseforge/rng.hpp"

namespace clauseforge {

enum class TaskKind { kEntailment, kSelection, kReconstruction };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

struct DifficultySpec {
  TaskKind kind = TaskKind::kEntailment;
  int level = 1;
  int d = 1;  // proof depth
  int k = 0;  // perturbation / distractor count (unused for reconstruction)
};

struct EntailmentTask {
  std::vector<AnnotatedClause> context;
  std::vector<Clause> premises;
  Clause conjecture;
  bool label = false;  // always a definite oracle verdict
  DifficultySpec spec;
  std::string domain;
  std::uint64_t seed = 0;
  std::string theorem_name;
};

struct SelectionTask {
  std::vector<AnnotatedClause> context;
  Clause theorem;
  std::vector<Clause> pool;  // shuffled; position i holds index i+1
  std::vector<int> answer;   // sorted 1-based indices of the minimal set
  DifficultySpec spec;
  std::string domain;
  std::uint64_t seed = 0;
  std::string theorem_name;
};

struct ReconstructionTask {
  std::vector<Clause> clauses;               // shuffled; position i holds index i+1
  std::vector<std::array<int, 3>> answer;    // {child, parent, parent}, by child
  int theorem_index = 0;                     // 1-based
  DifficultySpec spec;
  std::string domain;
  std::uint64_t seed = 0;
  std::string theorem_name;
};

using TaskInstance = std::variant<EntailmentTask, SelectionTask, ReconstructionTask>;

TaskKind kind_of(const TaskInstance& task);
const DifficultySpec& spec_of(const TaskInstance& task);

// Raised when an instance cannot be certified (oracle ResourceOut or an
// unexpected indefinite check); the caller retries with fresh randomness.
class InstanceDiscarded : public std::runtime_error {
 public:
  explicit InstanceDiscarded(const std::string& why) : std::runtime_error(why) {}
};

// Raised when generation is infeasible for the given graph and spec.
class GenError : public std::runtime_error {
 public:
  explicit GenError(const std::string& why) : std::runtime_error(why) {}
};

// Applies exactly k atomic edits (add / remove / replace, uniform among
// the feasible kinds) to a premise set, drawing candidates from the
// graph's clauses; never removes below one clause; result deduplicated.
std::vector<Clause> perturb_premises(const std::vector<Clause>& p_correct,
                                     const DerivationGraph& g, int k, Rng& rng);

// Builds one entailment instance for a ranked theorem: depth-d cut,
// k perturbations, oracle label. ResourceOut labels are retried with
// fresh perturbations up to `budget`, then the instance is discarded.
EntailmentTask gen_entailment(const DerivationGraph& g, NodeId theorem,
                              const DifficultySpec& spec, Rng& rng,
                              const EntailmentOracle& oracle, int budget = 20);

// Single fixed-order pruning pass; returns a subset that still entails
// the theorem and is minimal (dropping any one element breaks definite
// entailment). ResourceOut discards the instance.
std::vector<Clause> minimize_premises(const std::vector<Clause>& p_sufficient,
                                      const Clause& theorem,
                                      const EntailmentOracle& oracle);

// Samples k clauses from the graph excluding the theorem, its ancestors,
// and anything equal to an excluded clause; the sampled set alone must
// not entail the theorem (oracle spot check, resampled on failure).
std::vector<Clause> pick_distractors(const DerivationGraph& g, NodeId theorem, int k,
                                     const std::vector<Clause>& exclude, Rng& rng,
                                     const EntailmentOracle& oracle, int budget = 10);

SelectionTask gen_selection(const DerivationGraph& g, NodeId theorem,
                            const DifficultySpec& spec, Rng& rng,
                            const EntailmentOracle& oracle);

// Scans candidate theorems (starting at a random offset) for a binary
// proof subgraph of depth spec.d; absent when none qualifies.
std::optional<ReconstructionTask> gen_reconstruction(const DerivationGraph& g,
                                                     const std::vector<NodeId>& candidates,
                                                     const DifficultySpec& spec, Rng& rng);

std::string render_prompt(const TaskInstance& task);

// Canonical stored answer text: "True"/"False", "[1, 3, 7]", or
// "child <- p1, p2" lines.
std::string render_answer(const TaskInstance& task);

std::string domain_display_name(const std::string& code);

}  // namespace clauseforge
