#pragma once

// Shared helpers for the test binaries: tiny deterministic generators for
// random terms, clauses, and derivation graphs.

#include <string>
#include <vector>

#include "clauseforge/formula.hpp"
#include "clauseforge/parse.hpp"
#include "clauseforge/prover.hpp"
#include "clauseforge/rng.hpp"

namespace clauseforge::testutil {

inline Clause C(const std::string& text) { return parse_clause(text); }

inline Term random_term(Rng& rng, int depth) {
  static const char* functions[] = {"f", "g", "h"};
  static const char* constants[] = {"a", "b", "c"};
  static const char* variables[] = {"X1", "X2", "X3"};
  int pick = rng.uniform(depth <= 0 ? 2 : 3);
  if (pick == 0) return Term::variable(variables[rng.uniform(3)]);
  if (pick == 1) return Term::compound(constants[rng.uniform(3)]);
  int arity = 1 + rng.uniform(2);
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, depth - 1));
  return Term::compound(functions[rng.uniform(3)], std::move(args));
}

inline Clause random_clause(Rng& rng, int max_literals = 3) {
  static const char* predicates[] = {"p", "q", "r"};
  int n = 1 + rng.uniform(max_literals);
  std::vector<Literal> lits;
  for (int i = 0; i < n; ++i) {
    int arity = 1 + rng.uniform(2);
    std::vector<Term> args;
    for (int j = 0; j < arity; ++j) args.push_back(random_term(rng, 1));
    lits.emplace_back(rng.uniform(2) == 0,
                      Term::compound(predicates[rng.uniform(3)], std::move(args)));
  }
  return Clause(std::move(lits));
}

// Random derivation log shaped like saturation output: `axioms` roots
// followed by derived records with two earlier parents each.
inline SaturationOutput random_derivation(Rng& rng, int axioms, int derived) {
  SaturationOutput out;
  for (int i = 0; i < axioms; ++i) {
    DerivationRecord rec;
    rec.name = "ax" + std::to_string(i + 1);
    rec.role = Role::kAxiom;
    rec.clause = C("(p" + std::to_string(i) + "(a))");
    rec.rule = "input";
    out.records.push_back(rec);
  }
  for (int i = 0; i < derived; ++i) {
    DerivationRecord rec;
    rec.name = "d" + std::to_string(i + 1);
    rec.role = Role::kDerived;
    rec.clause = C("(q" + std::to_string(i) + "(a))");
    rec.rule = "resolution";
    int total = axioms + i;
    int p1 = rng.uniform(total);
    int p2 = rng.uniform(total);
    if (p2 == p1) p2 = (p1 + 1) % total;
    rec.parents.push_back(out.records[p1].name);
    rec.parents.push_back(out.records[p2].name);
    out.records.push_back(rec);
  }
  return out;
}

}  // namespace clauseforge::testutil
