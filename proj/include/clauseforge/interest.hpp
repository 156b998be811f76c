#pragma once

#include <ostream>
#include <vector>

#include "clauseforge/graph.hpp"

namespace clauseforge {

struct RaterConfig {
  int weight_cap = 60;              // clause weight at which complexity hits 0
  double interest_threshold = 0.5;  // provisional-interest cutoff in [0,1]
  double w_complexity = 1.0 / 3.0;
  double w_surprise = 1.0 / 3.0;
  double w_usefulness = 1.0 / 3.0;
  int top_n = 40;

  void validate() const;
};

struct InterestScore {
  double complexity = 0;
  double surprisingness = 0;
  double usefulness = 0;
  double combined = 0;
};

// max(0, 1 - weight / weight_cap).
double score_complexity(const Clause& c, const RaterConfig& cfg);

// 1 minus the mean familiarity of the clause's unordered symbol pairs,
// where familiarity of {s,t} is cooccurrence / max(1, min occurrence)
// over the axiom set. Fewer than two distinct symbols scores 0.
double score_surprisingness(const Clause& c, const SignatureStats& axiom_stats);

struct PartialScores {
  std::vector<double> complexity;      // indexed by NodeId
  std::vector<double> surprisingness;  // indexed by NodeId
};

// Ratio of provisionally interesting descendants to all descendants,
// computed in reverse topological order. Nodes without descendants score 0.
std::vector<double> score_usefulness(const DerivationGraph& g,
                                     const PartialScores& partial,
                                     const RaterConfig& cfg);

// Full per-node scores; axiom entries are all-zero and never ranked.
std::vector<InterestScore> score_graph(const DerivationGraph& g, const RaterConfig& cfg);

// Non-axiom nodes by combined score descending, ties by node name;
// truncated to top_n.
std::vector<NodeId> rank_theorems(const DerivationGraph& g,
                                  const std::vector<InterestScore>& scores,
                                  const RaterConfig& cfg);

// Tab-separated table: node name and the four scores.
void write_score_table(const DerivationGraph& g, const std::vector<InterestScore>& scores,
                       std::ostream& out);

}  // namespace clauseforge
