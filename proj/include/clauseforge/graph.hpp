#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "clauseforge/prover.hpp"

namespace clauseforge {

using NodeId = std::uint32_t;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& message) : std::runtime_error(message) {}
};

// Derivation DAG over annotated clauses. Immutable after build; all
// queries are read-only.
struct DerivationGraph {
  std::vector<AnnotatedClause> nodes;
  std::vector<std::vector<NodeId>> parents;
  std::vector<std::vector<NodeId>> children;
  std::vector<std::string> rules;
  std::vector<NodeId> roots;  // axiom nodes
  std::unordered_map<std::string, NodeId> by_name;

  std::size_t size() const { return nodes.size(); }
  bool is_axiom(NodeId id) const { return parents[id].empty(); }
  NodeId id_of(const std::string& name) const;
  const Clause& clause_of(NodeId id) const { return nodes[id].clause; }
};

// Validates and indexes a derivation log: duplicate names, unknown
// parents, and cycles are errors; non-axiom records must have parents.
DerivationGraph build_graph(const SaturationOutput& records);

// All ancestors of target (target excluded), sorted by id.
std::vector<NodeId> ancestors(const DerivationGraph& g, NodeId target);

// Exactly the axiom ancestors of target; a target that is itself an axiom
// yields {target}.
std::vector<NodeId> context_axioms(const DerivationGraph& g, NodeId target);

// Premise frontier of a backward traversal: cut every parent path at
// inference distance d from target; an axiom met earlier is absorbed into
// the frontier. Context is always the full axiom ancestor set.
struct DepthCut {
  std::vector<NodeId> premises;
  std::vector<NodeId> context_axioms;
  int depth = 0;
};

DepthCut premises_at_depth(const DerivationGraph& g, NodeId target, int d);

// Longest path length in edges from any axiom to target; 0 for axioms.
int node_depth(const DerivationGraph& g, NodeId target);

struct ProofSubgraph {
  NodeId target = 0;
  std::vector<NodeId> nodes;  // sorted
  // One entry per non-axiom node: {child, parent, parent}.
  std::vector<std::array<NodeId, 3>> steps;
};

// Node-count window accepted for a depth-d subgraph: the path-tree
// minimum and the full binary tree maximum.
struct SubgraphWindow {
  int min_nodes(int d) const { return 2 * d + 1; }
  int max_nodes(int d) const { return (1 << (d + 1)) - 1; }
};

// The full ancestor subgraph of target when every non-axiom node in it
// has exactly two parents, its depth is exactly d, and its node count
// falls in the window; nullopt otherwise.
std::optional<ProofSubgraph> binary_proof_subgraph(const DerivationGraph& g,
                                                   NodeId target, int d,
                                                   const SubgraphWindow& window = {});

// Debug export, one `parent -> child` line per edge.
void write_edge_list(const DerivationGraph& g, std::ostream& out);

}  // namespace clauseforge
