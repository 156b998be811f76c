#include "clauseforge/task.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace clauseforge {

const char* to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kEntailment: return "entailment";
    case TaskKind::kSelection: return "selection";
    case TaskKind::kReconstruction: return "reconstruction";
  }
  return "unknown";
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "entailment") return TaskKind::kEntailment;
  if (s == "selection") return TaskKind::kSelection;
  if (s == "reconstruction") return TaskKind::kReconstruction;
  throw std::invalid_argument("unknown task kind '" + s + "'");
}

TaskKind kind_of(const TaskInstance& task) {
  return std::visit([](const auto& t) { return t.spec.kind; }, task);
}

const DifficultySpec& spec_of(const TaskInstance& task) {
  return std::visit([](const auto& t) -> const DifficultySpec& { return t.spec; }, task);
}

namespace {

std::set<std::string> key_set(const std::vector<Clause>& clauses) {
  std::set<std::string> keys;
  for (const Clause& c : clauses) keys.insert(canonical_key(c));
  return keys;
}

// Graph clauses not canonically present in `taken`, in node-id order.
std::vector<Clause> open_candidates(const DerivationGraph& g,
                                    const std::set<std::string>& taken) {
  std::vector<Clause> out;
  for (NodeId id = 0; id < g.size(); ++id) {
    const Clause& c = g.clause_of(id);
    if (!taken.count(canonical_key(c))) out.push_back(c);
  }
  return out;
}

std::vector<AnnotatedClause> collect_context(const DerivationGraph& g, NodeId theorem) {
  std::vector<AnnotatedClause> out;
  for (NodeId id : context_axioms(g, theorem)) out.push_back(g.nodes[id]);
  return out;
}

}  // namespace

std::vector<Clause> perturb_premises(const std::vector<Clause>& p_correct,
                                     const DerivationGraph& g, int k, Rng& rng) {
  std::vector<Clause> premises = p_correct;
  std::set<std::string> taken = key_set(premises);
  for (int edit = 0; edit < k; ++edit) {
    std::vector<Clause> candidates = open_candidates(g, taken);
    enum Kind { kAdd, kRemove, kReplace };
    std::vector<Kind> feasible;
    if (!candidates.empty()) feasible.push_back(kAdd);
    if (premises.size() >= 2) feasible.push_back(kRemove);
    if (!candidates.empty()) feasible.push_back(kReplace);
    if (feasible.empty()) {
      throw GenError("no clauses available to add and removal floor reached");
    }
    Kind kind = feasible[rng.uniform(static_cast<int>(feasible.size()))];
    if (kind == kAdd || kind == kReplace) {
      if (kind == kReplace) {
        int victim = rng.uniform(static_cast<int>(premises.size()));
        taken.erase(canonical_key(premises[victim]));
        premises.erase(premises.begin() + victim);
      }
      const Clause& added = candidates[rng.uniform(static_cast<int>(candidates.size()))];
      taken.insert(canonical_key(added));
      premises.push_back(added);
    } else {
      int victim = rng.uniform(static_cast<int>(premises.size()));
      taken.erase(canonical_key(premises[victim]));
      premises.erase(premises.begin() + victim);
    }
  }
  return premises;
}

EntailmentTask gen_entailment(const DerivationGraph& g, NodeId theorem,
                              const DifficultySpec& spec, Rng& rng,
                              const EntailmentOracle& oracle, int budget) {
  DepthCut cut = premises_at_depth(g, theorem, spec.d);
  std::vector<Clause> p_correct;
  for (NodeId id : cut.premises) p_correct.push_back(g.clause_of(id));
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<Clause> perturbed = perturb_premises(p_correct, g, spec.k, rng);
    Verdict verdict = oracle.check(perturbed, g.clause_of(theorem));
    if (verdict.kind == VerdictKind::kResourceOut) continue;  // fresh randomness
    EntailmentTask task;
    task.context = collect_context(g, theorem);
    task.premises = std::move(perturbed);
    task.conjecture = g.clause_of(theorem);
    task.label = verdict.kind == VerdictKind::kEntailed;
    task.spec = spec;
    task.domain = g.nodes[theorem].source_domain;
    task.theorem_name = g.nodes[theorem].name;
    return task;
  }
  throw InstanceDiscarded("no definite label within the retry budget");
}

std::vector<Clause> minimize_premises(const std::vector<Clause>& p_sufficient,
                                      const Clause& theorem,
                                      const EntailmentOracle& oracle) {
  // A premise identical to the theorem dominates every other subset.
  std::string theorem_key = canonical_key(theorem);
  for (const Clause& p : p_sufficient) {
    if (canonical_key(p) == theorem_key) return {p};
  }
  std::vector<Clause> current = p_sufficient;
  for (std::size_t i = 0; i < current.size();) {
    std::vector<Clause> without;
    without.reserve(current.size() - 1);
    for (std::size_t j = 0; j < current.size(); ++j) {
      if (j != i) without.push_back(current[j]);
    }
    Verdict verdict = oracle.check(without, theorem);
    switch (verdict.kind) {
      case VerdictKind::kEntailed:
        current = std::move(without);  // premise i was unnecessary
        break;
      case VerdictKind::kNotEntailed:
        ++i;  // premise i is load-bearing
        break;
      case VerdictKind::kResourceOut:
        throw InstanceDiscarded("minimization hit an indefinite oracle verdict");
    }
  }
  return current;
}

std::vector<Clause> pick_distractors(const DerivationGraph& g, NodeId theorem, int k,
                                     const std::vector<Clause>& exclude, Rng& rng,
                                     const EntailmentOracle& oracle, int budget) {
  if (k == 0) return {};
  std::set<std::string> excluded = key_set(exclude);
  excluded.insert(canonical_key(g.clause_of(theorem)));
  for (NodeId id : ancestors(g, theorem)) {
    excluded.insert(canonical_key(g.clause_of(id)));
  }
  std::vector<Clause> candidates = open_candidates(g, excluded);
  if (static_cast<int>(candidates.size()) < k) {
    throw GenError("fewer than k candidate distractors in graph");
  }
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<Clause> sample = candidates;
    rng.shuffle(sample);
    sample.resize(k);
    // Distractors alone must not prove the theorem.
    Verdict verdict = oracle.check(sample, g.clause_of(theorem));
    if (verdict.kind == VerdictKind::kNotEntailed) return sample;
    if (verdict.kind == VerdictKind::kResourceOut) {
      throw InstanceDiscarded("distractor spot check was indefinite");
    }
  }
  throw InstanceDiscarded("could not sample an irrelevant distractor set");
}

SelectionTask gen_selection(const DerivationGraph& g, NodeId theorem,
                            const DifficultySpec& spec, Rng& rng,
                            const EntailmentOracle& oracle) {
  DepthCut cut = premises_at_depth(g, theorem, spec.d);
  std::vector<Clause> p_sufficient;
  for (NodeId id : cut.premises) p_sufficient.push_back(g.clause_of(id));
  Verdict sufficient = oracle.check(p_sufficient, g.clause_of(theorem));
  if (sufficient.kind != VerdictKind::kEntailed) {
    throw InstanceDiscarded("depth cut could not be certified sufficient");
  }
  std::vector<Clause> p_minimal = minimize_premises(p_sufficient, g.clause_of(theorem), oracle);
  std::vector<Clause> distractors =
      pick_distractors(g, theorem, spec.k, p_minimal, rng, oracle);

  std::vector<std::pair<Clause, bool>> pool;  // clause, is_minimal
  for (const Clause& c : p_minimal) pool.emplace_back(c, true);
  for (const Clause& c : distractors) pool.emplace_back(c, false);
  rng.shuffle(pool);

  SelectionTask task;
  task.context = collect_context(g, theorem);
  task.theorem = g.clause_of(theorem);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    task.pool.push_back(pool[i].first);
    if (pool[i].second) task.answer.push_back(static_cast<int>(i) + 1);
  }
  std::sort(task.answer.begin(), task.answer.end());
  task.spec = spec;
  task.domain = g.nodes[theorem].source_domain;
  task.theorem_name = g.nodes[theorem].name;
  return task;
}

std::optional<ReconstructionTask> gen_reconstruction(const DerivationGraph& g,
                                                     const std::vector<NodeId>& candidates,
                                                     const DifficultySpec& spec, Rng& rng) {
  if (candidates.empty()) return std::nullopt;
  int start = rng.uniform(static_cast<int>(candidates.size()));
  for (std::size_t step = 0; step < candidates.size(); ++step) {
    NodeId theorem = candidates[(start + step) % candidates.size()];
    auto sub = binary_proof_subgraph(g, theorem, spec.d);
    if (!sub) continue;
    // Index answers are ambiguous if two listed clauses coincide.
    std::set<std::string> keys;
    bool distinct = true;
    for (NodeId id : sub->nodes) {
      if (!keys.insert(canonical_key(g.clause_of(id))).second) {
        distinct = false;
        break;
      }
    }
    if (!distinct) continue;

    std::vector<NodeId> order = sub->nodes;
    rng.shuffle(order);
    std::unordered_map<NodeId, int> index;  // 1-based shuffled position
    ReconstructionTask task;
    for (std::size_t i = 0; i < order.size(); ++i) {
      index[order[i]] = static_cast<int>(i) + 1;
      task.clauses.push_back(g.clause_of(order[i]));
    }
    for (const auto& s : sub->steps) {
      task.answer.push_back({index[s[0]], index[s[1]], index[s[2]]});
    }
    std::sort(task.answer.begin(), task.answer.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    task.theorem_index = index[theorem];
    task.spec = spec;
    task.domain = g.nodes[theorem].source_domain;
    task.theorem_name = g.nodes[theorem].name;
    return task;
  }
  return std::nullopt;
}

std::string domain_display_name(const std::string& code) {
  if (code == "ALG") return "Algebra";
  if (code == "FLD") return "Fields";
  if (code == "GEO") return "Geometry";
  if (code == "SET") return "Set Theory";
  if (code == "TOP") return "Topology";
  return code;
}

namespace {

std::string render_prompt_entailment(const EntailmentTask& task) {
  std::ostringstream out;
  out << "You will be given a logical entailment problem in three parts.\n"
      << "\n"
      << "PART 1: CONTEXT\n"
      << "The following are general axioms from the domain of **"
      << domain_display_name(task.domain) << "**.\n"
      << "They provide definitions and background theory.\n"
      << "**Do NOT use them directly in the proof.**\n"
      << "\n";
  for (const AnnotatedClause& ax : task.context) {
    out << "- " << render_annotated(ax) << "\n";
  }
  out << "\n\n"
      << "PART 2: THE SPECIFIC PROBLEM\n"
      << "Your task is to evaluate the following specific entailment claim.\n"
      << "\n"
      << "**Premises to use:**\n";
  for (const Clause& p : task.premises) {
    out << "- " << render_clause(p) << "\n";
  }
  out << "\n\n"
      << "**Conclusion to prove:**\n"
      << render_clause(task.conjecture) << "\n"
      << "\n\n"
      << "PART 3: YOUR TASK\n"
      << "Based **only** on the 'Premises to use', does the 'Conclusion to prove' "
         "logically follow?\n"
      << "Answer with a single word: `True` or `False`.\n";
  return out.str();
}

std::string render_prompt_selection(const SelectionTask& task) {
  std::ostringstream out;
  out << "You are a mathematical logic assistant.\n"
      << "Your task is to identify a minimal set of premises sufficient for a proof.\n"
      << "\n"
      << "## General Context\n"
      << "The problem is set in the domain of: **" << domain_display_name(task.domain)
      << "**.\n"
      << "The following are the fundamental axioms of this domain.\n"
      << "They provide general context. **Do not use them in the proof itself.**\n"
      << "Fundamental Axioms:\n";
  for (const AnnotatedClause& ax : task.context) {
    out << "- " << render_annotated(ax) << "\n";
  }
  out << "\n"
      << "## Task\n"
      << "Your goal is to prove the following theorem:\n"
      << "**Theorem:**\n"
      << "`" << render_clause(task.theorem) << "`\n"
      << "\n"
      << "Below is a numbered pool of potential premises.\n"
      << "Your task is to identify the **minimal subset** of numbers from this pool\n"
      << "whose corresponding statements are **sufficient on their own** to prove the "
         "theorem.\n"
      << "\n"
      << "**Pool of Premises:**\n";
  for (std::size_t i = 0; i < task.pool.size(); ++i) {
    out << (i + 1) << ". " << render_clause(task.pool[i]) << "\n";
  }
  out << "\n"
      << "### Question\n"
      << "Which is the smallest set of numbered premises from the pool that is "
         "sufficient to prove the theorem,\n"
      << "without using the fundamental axioms from the context?\n"
      << "\n"
      << "### Response Format\n"
      << "Your answer must be **only** a list of numbers, sorted in increasing order. "
         "For example: `[2, 5, 8]`.\n";
  return out.str();
}

std::string render_prompt_reconstruction(const ReconstructionTask& task) {
  std::ostringstream out;
  out << "Your task is to reconstruct the dependency graph of a mathematical proof "
         "from the domain of **"
      << domain_display_name(task.domain) << "**.\n"
      << "\n"
      << "The proof graph concludes with the theorem:\n"
      << "`" << render_clause(task.clauses[task.theorem_index - 1]) << "`\n"
      << "\n"
      << "## Proof Context & Rules\n"
      << "This proof was generated by using the **Superposition Calculus** (which "
         "includes rules like Resolution and Paramodulation).\n"
      << "\n"
      << "Therefore, the proof has the following properties:\n"
      << "- **Starting Points:** Some clauses in the list are starting points (axioms) "
         "and are not derived from other clauses.\n"
      << "- **Derived Clauses:** Every other clause is derived from exactly **two** "
         "parent clauses from the list.\n"
      << "- **Clause Reuse:** A single clause can be used as a parent in multiple "
         "derivation steps.\n"
      << "\n"
      << "## Your Task\n"
      << "Given the rules above, reconstruct the proof from the following shuffled "
         "list of clauses.\n"
      << "Identify the derivation for every clause that is not a starting point.\n"
      << "\n"
      << "**Shuffled Clauses:**\n";
  for (std::size_t i = 0; i < task.clauses.size(); ++i) {
    out << (i + 1) << ". " << render_clause(task.clauses[i]) << "\n";
  }
  out << "\n"
      << "## Required Output Format\n"
      << "- List **only** the derivation steps.\n"
      << "- Each step must be on a new line.\n"
      << "- Use the exact format `CHILD <- PARENT_1, PARENT_2`. Example: `5 <- 2, 4`.\n"
      << "- All clauses from the list must be used in the final structure.\n"
      << "- No explanations, comments, or extra text.\n";
  return out.str();
}

}  // namespace

std::string render_prompt(const TaskInstance& task) {
  if (const auto* e = std::get_if<EntailmentTask>(&task)) return render_prompt_entailment(*e);
  if (const auto* s = std::get_if<SelectionTask>(&task)) return render_prompt_selection(*s);
  return render_prompt_reconstruction(std::get<ReconstructionTask>(task));
}

std::string render_answer(const TaskInstance& task) {
  if (const auto* e = std::get_if<EntailmentTask>(&task)) {
    return e->label ? "True" : "False";
  }
  if (const auto* s = std::get_if<SelectionTask>(&task)) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < s->answer.size(); ++i) {
      if (i > 0) out << ", ";
      out << s->answer[i];
    }
    out << "]";
    return out.str();
  }
  const auto& r = std::get<ReconstructionTask>(task);
  std::ostringstream out;
  for (std::size_t i = 0; i < r.answer.size(); ++i) {
    if (i > 0) out << "\n";
    out << r.answer[i][0] << " <- " << r.answer[i][1] << ", " << r.answer[i][2];
  }
  return out.str();
}

}  // namespace clauseforge
