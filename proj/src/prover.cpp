#include "clauseforge/prover.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "clauseforge/unify.hpp"

namespace clauseforge {

void ProverLimits::validate() const {
  if (timeout_s <= 0 || max_clauses <= 0 || max_weight <= 0) {
    throw std::invalid_argument("prover limits must all be positive");
  }
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kEntailed: return "Entailed";
    case VerdictKind::kNotEntailed: return "NotEntailed";
    case VerdictKind::kResourceOut: return "ResourceOut";
  }
  return "unknown";
}

namespace {

Clause dedup_literals(const Clause& c) {
  Clause out;
  for (const Literal& lit : c.literals) {
    bool seen = false;
    for (const Literal& kept : out.literals) {
      if (kept == lit) {
        seen = true;
        break;
      }
    }
    if (!seen) out.literals.push_back(lit);
  }
  return out;
}

}  // namespace

std::vector<Clause> resolve(const Clause& c1, const Clause& c2) {
  Clause right = rename_with_suffix(c2, "_r");
  std::vector<Clause> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < c1.literals.size(); ++i) {
    for (std::size_t j = 0; j < right.literals.size(); ++j) {
      const Literal& a = c1.literals[i];
      const Literal& b = right.literals[j];
      if (a.positive == b.positive) continue;
      auto mgu = unify(a.atom, b.atom);
      if (!mgu) continue;
      Clause resolvent;
      for (std::size_t k = 0; k < c1.literals.size(); ++k) {
        if (k != i) resolvent.literals.push_back(substitute(c1.literals[k], *mgu));
      }
      for (std::size_t k = 0; k < right.literals.size(); ++k) {
        if (k != j) resolvent.literals.push_back(substitute(right.literals[k], *mgu));
      }
      Clause normalized = normalize_variables(dedup_literals(resolvent));
      if (seen.insert(canonical_key(normalized)).second) {
        out.push_back(std::move(normalized));
      }
    }
  }
  return out;
}

std::vector<Clause> factor(const Clause& c) {
  std::vector<Clause> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      const Literal& a = c.literals[i];
      const Literal& b = c.literals[j];
      if (a.positive != b.positive) continue;
      auto mgu = unify(a.atom, b.atom);
      if (!mgu) continue;
      Clause normalized = normalize_variables(dedup_literals(substitute(c, *mgu)));
      if (seen.insert(canonical_key(normalized)).second) {
        out.push_back(std::move(normalized));
      }
    }
  }
  return out;
}

bool subsumed(const Clause& c, const std::vector<Clause>& store) {
  for (const Clause& s : store) {
    if (subsumes(s, c)) return true;
  }
  return false;
}

std::vector<Clause> negate_conjecture(const Clause& conjecture,
                                      const std::vector<std::string>& avoid_symbols) {
  std::set<std::string> taken(avoid_symbols.begin(), avoid_symbols.end());
  for (const std::string& s : clause_symbols(conjecture)) taken.insert(s);
  Subst grounding;
  int next = 1;
  for (const std::string& var : clause_variables(conjecture)) {
    std::string name;
    do {
      name = "sk" + std::to_string(next++);
    } while (taken.count(name));
    taken.insert(name);
    grounding.emplace(var, Term::compound(name));
  }
  std::vector<Clause> units;
  units.reserve(conjecture.size());
  for (const Literal& lit : conjecture.literals) {
    units.push_back(Clause({substitute(lit, grounding).negated()}));
  }
  return units;
}

namespace {

// Given-clause loop shared by proving and goal-free saturation.
class Saturator {
 public:
  Saturator(const ProverLimits& limits) : limits_(limits) { limits_.validate(); }

  void add_input(std::string name, Role role, Clause clause) {
    DerivationRecord rec;
    rec.name = std::move(name);
    rec.role = role;
    rec.clause = std::move(clause);
    rec.rule = "input";
    admit(std::move(rec));
  }

  // Runs to quiescence or limits. Returns true when the empty clause was
  // derived.
  bool run() {
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(limits_.timeout_s));
    if (found_empty_) return true;
    while (!queue_.empty()) {
      if (std::chrono::steady_clock::now() > deadline) {
        truncated_ = true;
        return false;
      }
      std::size_t given = queue_.begin()->second;
      queue_.erase(queue_.begin());
      const Clause clause = records_[given].clause;
      if (is_tautology(clause) || subsumed(clause, processed_clauses_)) continue;
      processed_.push_back(given);
      processed_clauses_.push_back(clause);

      for (const Clause& f : factor(clause)) {
        if (!admit_derived(f, {records_[given].name}, "factoring")) return found_empty_;
      }
      for (std::size_t p = 0; p < processed_.size(); ++p) {
        for (const Clause& r : resolve(processed_clauses_[p], clause)) {
          if (!admit_derived(r, {records_[processed_[p]].name, records_[given].name},
                             "resolution")) {
            return found_empty_;
          }
        }
        if (std::chrono::steady_clock::now() > deadline) {
          truncated_ = true;
          return false;
        }
      }
    }
    return found_empty_;
  }

  bool saturated() const { return queue_.empty() && !truncated_ && !found_empty_; }
  bool truncated() const { return truncated_; }
  bool found_empty() const { return found_empty_; }
  const std::vector<DerivationRecord>& records() const { return records_; }

  // Trace restricted to ancestors of the empty clause, in record order.
  std::vector<DerivationRecord> refutation_trace() const {
    if (!found_empty_) return {};
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < records_.size(); ++i) index[records_[i].name] = i;
    std::vector<bool> keep(records_.size(), false);
    std::vector<std::size_t> stack = {empty_index_};
    keep[empty_index_] = true;
    while (!stack.empty()) {
      std::size_t at = stack.back();
      stack.pop_back();
      for (const std::string& parent : records_[at].parents) {
        std::size_t p = index.at(parent);
        if (!keep[p]) {
          keep[p] = true;
          stack.push_back(p);
        }
      }
    }
    std::vector<DerivationRecord> trace;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (keep[i]) trace.push_back(records_[i]);
    }
    return trace;
  }

 private:
  // Returns false to stop search (empty clause found or clause cap hit).
  bool admit_derived(const Clause& c, std::vector<std::string> parents,
                     std::string rule) {
    if (is_tautology(c)) return true;
    if (clause_weight(c) > limits_.max_weight) {
      truncated_ = true;  // the closure is no longer exhaustive
      return true;
    }
    std::string key = canonical_key(c);
    if (keys_.count(key)) return true;
    if (subsumed(c, processed_clauses_)) return true;
    if (static_cast<int>(records_.size()) >= limits_.max_clauses) {
      truncated_ = true;
      return false;
    }
    DerivationRecord rec;
    rec.name = fresh_name();
    rec.role = Role::kDerived;
    rec.clause = c;
    rec.parents = std::move(parents);
    rec.rule = std::move(rule);
    keys_.insert(std::move(key));
    bool empty = c.empty();
    push(std::move(rec));
    return !empty;
  }

  void admit(DerivationRecord rec) {
    if (!names_.insert(rec.name).second) {
      throw std::invalid_argument("duplicate clause name '" + rec.name + "'");
    }
    keys_.insert(canonical_key(rec.clause));
    push(std::move(rec));
  }

  void push(DerivationRecord rec) {
    bool empty = rec.clause.empty();
    std::size_t id = records_.size();
    names_.insert(rec.name);
    int weight = clause_weight(rec.clause);
    records_.push_back(std::move(rec));
    if (empty) {
      found_empty_ = true;
      empty_index_ = id;
      return;
    }
    queue_.emplace(std::make_pair(weight, id), id);
  }

  std::string fresh_name() {
    std::string name;
    do {
      name = "c" + std::to_string(next_id_++);
    } while (names_.count(name));
    return name;
  }

  ProverLimits limits_;
  std::vector<DerivationRecord> records_;
  std::vector<std::size_t> processed_;
  std::vector<Clause> processed_clauses_;
  // (weight, insertion id) -> record index; ordered pop is the selection rule.
  std::map<std::pair<int, std::size_t>, std::size_t> queue_;
  std::unordered_set<std::string> keys_;
  std::unordered_set<std::string> names_;
  bool truncated_ = false;
  bool found_empty_ = false;
  std::size_t empty_index_ = 0;
  int next_id_ = 1;
};

}  // namespace

Verdict prove_internal(const std::vector<Clause>& premises, const Clause& conjecture,
                       const ProverLimits& limits) {
  std::vector<std::string> avoid;
  for (const Clause& p : premises) {
    for (std::string& s : clause_symbols(p)) avoid.push_back(std::move(s));
  }
  Saturator engine(limits);
  int i = 1;
  for (const Clause& p : premises) {
    engine.add_input("p" + std::to_string(i++), Role::kAxiom, normalize_variables(p));
  }
  i = 1;
  for (const Clause& unit : negate_conjecture(conjecture, avoid)) {
    engine.add_input("nc" + std::to_string(i++), Role::kConjecture, unit);
  }
  Verdict verdict;
  if (engine.run()) {
    verdict.kind = VerdictKind::kEntailed;
    verdict.evidence = engine.refutation_trace();
  } else if (engine.saturated()) {
    verdict.kind = VerdictKind::kNotEntailed;
  } else {
    verdict.kind = VerdictKind::kResourceOut;
  }
  return verdict;
}

SaturationOutput saturate_internal(const std::vector<AnnotatedClause>& axioms,
                                   const ProverLimits& limits) {
  if (axioms.empty()) throw std::invalid_argument("axiom set must be non-empty");
  Saturator engine(limits);
  for (const AnnotatedClause& ax : axioms) {
    engine.add_input(ax.name, ax.role, ax.clause);
  }
  engine.run();
  SaturationOutput out;
  out.records = engine.records();
  out.complete = !engine.truncated();
  return out;
}

bool replay_derivation(const std::vector<DerivationRecord>& records) {
  std::unordered_map<std::string, const Clause*> by_name;
  for (const DerivationRecord& rec : records) {
    if (rec.parents.empty()) {
      by_name[rec.name] = &rec.clause;
      continue;
    }
    std::vector<const Clause*> parents;
    for (const std::string& p : rec.parents) {
      auto it = by_name.find(p);
      if (it == by_name.end()) return false;
      parents.push_back(it->second);
    }
    std::vector<Clause> candidates;
    if (parents.size() == 2) {
      candidates = resolve(*parents[0], *parents[1]);
    } else if (parents.size() == 1) {
      candidates = factor(*parents[0]);
    } else {
      return false;
    }
    bool found = false;
    for (const Clause& cand : candidates) {
      if (canonical_equal(cand, rec.clause)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
    by_name[rec.name] = &rec.clause;
  }
  return true;
}

}  // namespace clauseforge
