#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clauseforge/formula.hpp"

namespace clauseforge {

struct ProverLimits {
  double timeout_s = 5.0;
  int max_clauses = 2000;
  int max_weight = 100;

  void validate() const;
};

enum class VerdictKind { kEntailed, kNotEntailed, kResourceOut };

const char* to_string(VerdictKind kind);

// One line of a derivation log. Axioms and conjecture units carry no
// parents; resolution records two, factoring one.
struct DerivationRecord {
  std::string name;
  Role role = Role::kDerived;
  Clause clause;
  std::vector<std::string> parents;
  std::string rule;  // "input", "resolution", "factoring", or external label
};

struct SaturationOutput {
  std::vector<DerivationRecord> records;
  // False when any limit truncated the closure (timeout, clause cap, or a
  // generated clause over the weight cap was dropped).
  bool complete = true;
};

struct Verdict {
  VerdictKind kind = VerdictKind::kResourceOut;
  // Refutation trace for kEntailed: every record's parents appear earlier
  // in the list; the last record is the empty clause.
  std::vector<DerivationRecord> evidence;
};

// All binary resolvents of c1 against c2 (renamed apart internally):
// for each literal pair of opposite polarity with unifiable atoms, the
// union of the remaining literals under the mgu, variable-normalized and
// deduplicated.
std::vector<Clause> resolve(const Clause& c1, const Clause& c2);

// All factors: for each unifiable same-polarity literal pair, the clause
// under the mgu with duplicate literals merged, variable-normalized.
std::vector<Clause> factor(const Clause& c);

// True iff some clause in `store` subsumes `c`.
bool subsumed(const Clause& c, const std::vector<Clause>& store);

// Negates a single CNF clause: its variables are universal, so the
// negation grounds them with fresh constants (skolems avoiding
// `avoid_symbols`) and asserts each literal's negation as a unit clause.
std::vector<Clause> negate_conjecture(const Clause& conjecture,
                                      const std::vector<std::string>& avoid_symbols);

// Refutation check: Entailed iff the empty clause is derivable from
// premises plus the negated conjecture; NotEntailed only on genuine
// saturation within limits; ResourceOut otherwise.
Verdict prove_internal(const std::vector<Clause>& premises, const Clause& conjecture,
                       const ProverLimits& limits);

// Given-clause saturation with no goal. Smallest clause weight first,
// ties by insertion order; tautology deletion and forward subsumption.
// Stops at limits and returns the partial closure.
SaturationOutput saturate_internal(const std::vector<AnnotatedClause>& axioms,
                                   const ProverLimits& limits);

// Checks that each derived record in a trace is reproducible from its
// parents with resolve/factor. Used by tests and the evidence invariant.
bool replay_derivation(const std::vector<DerivationRecord>& records);

}  // namespace clauseforge
