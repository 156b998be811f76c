#include "clauseforge/graph.hpp"

#include <algorithm>
#include <set>

namespace clauseforge {

NodeId DerivationGraph::id_of(const std::string& name) const {
  auto it = by_name.find(name);
  if (it == by_name.end()) throw GraphError("unknown node '" + name + "'");
  return it->second;
}

namespace {

void check_node(const DerivationGraph& g, NodeId id) {
  if (id >= g.size()) throw GraphError("node id out of range");
}

}  // namespace

DerivationGraph build_graph(const SaturationOutput& records) {
  DerivationGraph g;
  g.nodes.reserve(records.records.size());
  for (const DerivationRecord& rec : records.records) {
    if (g.by_name.count(rec.name)) {
      throw GraphError("duplicate node name '" + rec.name + "'");
    }
    NodeId id = static_cast<NodeId>(g.nodes.size());
    g.by_name.emplace(rec.name, id);
    AnnotatedClause ac;
    ac.name = rec.name;
    ac.role = rec.role;
    ac.clause = rec.clause;
    g.nodes.push_back(std::move(ac));
    g.rules.push_back(rec.rule);
  }
  g.parents.resize(g.size());
  g.children.resize(g.size());
  for (const DerivationRecord& rec : records.records) {
    NodeId child = g.by_name.at(rec.name);
    for (const std::string& pname : rec.parents) {
      auto it = g.by_name.find(pname);
      if (it == g.by_name.end()) {
        throw GraphError("record '" + rec.name + "' references unknown parent '" +
                         pname + "'");
      }
      g.parents[child].push_back(it->second);
      g.children[it->second].push_back(child);
    }
  }
  for (NodeId id = 0; id < g.size(); ++id) {
    if (g.parents[id].empty()) {
      g.roots.push_back(id);
    } else if (g.nodes[id].role == Role::kAxiom) {
      throw GraphError("axiom node '" + g.nodes[id].name + "' has parents");
    }
  }
  // Cycle check via Kahn's algorithm on parent counts.
  std::vector<std::size_t> pending(g.size());
  std::vector<NodeId> ready;
  for (NodeId id = 0; id < g.size(); ++id) {
    pending[id] = g.parents[id].size();
    if (pending[id] == 0) ready.push_back(id);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    NodeId at = ready.back();
    ready.pop_back();
    ++seen;
    for (NodeId child : g.children[at]) {
      if (--pending[child] == 0) ready.push_back(child);
    }
  }
  if (seen != g.size()) throw GraphError("derivation graph contains a cycle");
  return g;
}

std::vector<NodeId> ancestors(const DerivationGraph& g, NodeId target) {
  check_node(g, target);
  std::vector<bool> seen(g.size(), false);
  std::vector<NodeId> stack = {target};
  std::vector<NodeId> out;
  while (!stack.empty()) {
    NodeId at = stack.back();
    stack.pop_back();
    for (NodeId p : g.parents[at]) {
      if (!seen[p]) {
        seen[p] = true;
        out.push_back(p);
        stack.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> context_axioms(const DerivationGraph& g, NodeId target) {
  check_node(g, target);
  if (g.is_axiom(target)) return {target};
  std::vector<NodeId> out;
  for (NodeId a : ancestors(g, target)) {
    if (g.is_axiom(a)) out.push_back(a);
  }
  return out;
}

DepthCut premises_at_depth(const DerivationGraph& g, NodeId target, int d) {
  check_node(g, target);
  if (d < 1) throw GraphError("depth must be at least 1");
  if (g.is_axiom(target)) throw GraphError("target must be a derived node");
  DepthCut cut;
  cut.depth = d;
  std::set<NodeId> frontier;
  // (node, remaining) pairs already expanded; bounds repeated work on
  // reconvergent paths.
  std::set<std::pair<NodeId, int>> visited;
  std::vector<std::pair<NodeId, int>> stack = {{target, d}};
  visited.insert({target, d});
  while (!stack.empty()) {
    auto [at, remaining] = stack.back();
    stack.pop_back();
    for (NodeId p : g.parents[at]) {
      if (remaining == 1 || g.is_axiom(p)) {
        frontier.insert(p);
        continue;
      }
      if (visited.insert({p, remaining - 1}).second) {
        stack.push_back({p, remaining - 1});
      }
    }
  }
  cut.premises.assign(frontier.begin(), frontier.end());
  cut.context_axioms = context_axioms(g, target);
  return cut;
}

int node_depth(const DerivationGraph& g, NodeId target) {
  check_node(g, target);
  std::vector<int> depth(g.size(), -1);
  // Iterative DFS computing longest distance from any axiom.
  std::vector<std::pair<NodeId, bool>> stack = {{target, false}};
  while (!stack.empty()) {
    auto [at, expanded] = stack.back();
    stack.pop_back();
    if (depth[at] >= 0) continue;
    if (g.parents[at].empty()) {
      depth[at] = 0;
      continue;
    }
    if (expanded) {
      int best = 0;
      for (NodeId p : g.parents[at]) best = std::max(best, depth[p] + 1);
      depth[at] = best;
      continue;
    }
    stack.push_back({at, true});
    for (NodeId p : g.parents[at]) {
      if (depth[p] < 0) stack.push_back({p, false});
    }
  }
  return depth[target];
}

std::optional<ProofSubgraph> binary_proof_subgraph(const DerivationGraph& g,
                                                   NodeId target, int d,
                                                   const SubgraphWindow& window) {
  check_node(g, target);
  if (d < 1) throw GraphError("depth must be at least 1");
  if (g.is_axiom(target)) return std::nullopt;
  ProofSubgraph sub;
  sub.target = target;
  sub.nodes = ancestors(g, target);
  sub.nodes.push_back(target);
  std::sort(sub.nodes.begin(), sub.nodes.end());
  int n = static_cast<int>(sub.nodes.size());
  if (n < window.min_nodes(d) || n > window.max_nodes(d)) return std::nullopt;
  for (NodeId id : sub.nodes) {
    const auto& ps = g.parents[id];
    if (ps.empty()) continue;
    if (ps.size() != 2 || ps[0] == ps[1]) return std::nullopt;
    sub.steps.push_back({id, ps[0], ps[1]});
  }
  // The ancestor set is closed under parents, so depth within the
  // subgraph equals depth in the full graph.
  if (node_depth(g, target) != d) return std::nullopt;
  return sub;
}

void write_edge_list(const DerivationGraph& g, std::ostream& out) {
  for (NodeId child = 0; child < g.size(); ++child) {
    for (NodeId parent : g.parents[child]) {
      out << g.nodes[parent].name << " -> " << g.nodes[child].name << "\n";
    }
  }
}

}  // namespace clauseforge
