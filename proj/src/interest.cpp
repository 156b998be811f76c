#include "clauseforge/interest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clauseforge {

void RaterConfig::validate() const {
  if (weight_cap <= 0) throw std::invalid_argument("weight_cap must be positive");
  if (interest_threshold < 0 || interest_threshold > 1) {
    throw std::invalid_argument("interest_threshold must lie in [0,1]");
  }
  if (w_complexity < 0 || w_surprise < 0 || w_usefulness < 0) {
    throw std::invalid_argument("metric weights must be nonnegative");
  }
  double sum = w_complexity + w_surprise + w_usefulness;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("metric weights must sum to 1");
  }
  if (top_n <= 0) throw std::invalid_argument("top_n must be positive");
}

double score_complexity(const Clause& c, const RaterConfig& cfg) {
  double ratio = static_cast<double>(clause_weight(c)) / cfg.weight_cap;
  return std::max(0.0, 1.0 - ratio);
}

double score_surprisingness(const Clause& c, const SignatureStats& axiom_stats) {
  std::vector<std::string> symbols = clause_symbols(c);
  if (symbols.size() < 2) return 0.0;
  double familiar = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols.size(); ++j) {
      int lo = std::min(axiom_stats.occurrences(symbols[i]),
                        axiom_stats.occurrences(symbols[j]));
      int co = axiom_stats.cooccurrences(symbols[i], symbols[j]);
      familiar += static_cast<double>(co) / std::max(1, lo);
      ++pairs;
    }
  }
  return 1.0 - familiar / pairs;
}

namespace {

// Reverse topological node order (children before parents).
std::vector<NodeId> reverse_topological(const DerivationGraph& g) {
  std::vector<std::size_t> pending(g.size());
  std::vector<NodeId> ready;
  for (NodeId id = 0; id < g.size(); ++id) {
    pending[id] = g.children[id].size();
    if (pending[id] == 0) ready.push_back(id);
  }
  std::vector<NodeId> order;
  order.reserve(g.size());
  while (!ready.empty()) {
    NodeId at = ready.back();
    ready.pop_back();
    order.push_back(at);
    for (NodeId p : g.parents[at]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }
  return order;
}

}  // namespace

std::vector<double> score_usefulness(const DerivationGraph& g,
                                     const PartialScores& partial,
                                     const RaterConfig& cfg) {
  std::size_t n = g.size();
  double span = cfg.w_complexity + cfg.w_surprise;
  std::vector<bool> interesting(n, false);
  for (NodeId id = 0; id < n; ++id) {
    if (g.is_axiom(id)) continue;
    double partial_score = cfg.w_complexity * partial.complexity[id] +
                           cfg.w_surprise * partial.surprisingness[id];
    interesting[id] = partial_score >= cfg.interest_threshold * span;
  }
  // Descendant sets as bitsets, built children-first.
  std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> descendants(n, std::vector<std::uint64_t>(words, 0));
  std::vector<double> usefulness(n, 0.0);
  for (NodeId at : reverse_topological(g)) {
    auto& bits = descendants[at];
    for (NodeId child : g.children[at]) {
      bits[child / 64] |= std::uint64_t{1} << (child % 64);
      const auto& cb = descendants[child];
      for (std::size_t w = 0; w < words; ++w) bits[w] |= cb[w];
    }
    int total = 0, good = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = bits[w];
      while (word) {
        int bit = __builtin_ctzll(word);
        word &= word - 1;
        NodeId id = static_cast<NodeId>(w * 64 + bit);
        ++total;
        if (interesting[id]) ++good;
      }
    }
    usefulness[at] = total == 0 ? 0.0 : static_cast<double>(good) / total;
  }
  return usefulness;
}

std::vector<InterestScore> score_graph(const DerivationGraph& g, const RaterConfig& cfg) {
  cfg.validate();
  std::vector<Clause> axiom_clauses;
  for (NodeId root : g.roots) axiom_clauses.push_back(g.clause_of(root));
  SignatureStats stats = signature_stats(axiom_clauses);

  PartialScores partial;
  partial.complexity.resize(g.size(), 0.0);
  partial.surprisingness.resize(g.size(), 0.0);
  for (NodeId id = 0; id < g.size(); ++id) {
    if (g.is_axiom(id)) continue;
    partial.complexity[id] = score_complexity(g.clause_of(id), cfg);
    partial.surprisingness[id] = score_surprisingness(g.clause_of(id), stats);
  }
  std::vector<double> usefulness = score_usefulness(g, partial, cfg);

  std::vector<InterestScore> scores(g.size());
  for (NodeId id = 0; id < g.size(); ++id) {
    if (g.is_axiom(id)) continue;
    InterestScore& s = scores[id];
    s.complexity = partial.complexity[id];
    s.surprisingness = partial.surprisingness[id];
    s.usefulness = usefulness[id];
    s.combined = cfg.w_complexity * s.complexity + cfg.w_surprise * s.surprisingness +
                 cfg.w_usefulness * s.usefulness;
  }
  return scores;
}

std::vector<NodeId> rank_theorems(const DerivationGraph& g,
                                  const std::vector<InterestScore>& scores,
                                  const RaterConfig& cfg) {
  std::vector<NodeId> order;
  for (NodeId id = 0; id < g.size(); ++id) {
    if (!g.is_axiom(id)) order.push_back(id);
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (scores[a].combined != scores[b].combined) {
      return scores[a].combined > scores[b].combined;
    }
    return g.nodes[a].name < g.nodes[b].name;
  });
  if (static_cast<int>(order.size()) > cfg.top_n) order.resize(cfg.top_n);
  return order;
}

void write_score_table(const DerivationGraph& g, const std::vector<InterestScore>& scores,
                       std::ostream& out) {
  out << "node\tcomplexity\tsurprisingness\tusefulness\tcombined\n";
  for (NodeId id = 0; id < g.size(); ++id) {
    if (g.is_axiom(id)) continue;
    const InterestScore& s = scores[id];
    out << g.nodes[id].name << '\t' << s.complexity << '\t' << s.surprisingness << '\t'
        << s.usefulness << '\t' << s.combined << '\n';
  }
}

}  // namespace clauseforge
