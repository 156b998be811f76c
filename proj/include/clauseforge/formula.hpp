#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace clauseforge {

// A first-order term: either a variable (name starts uppercase) or a
// compound of a functor and argument terms. Constants are zero-arity
// compounds. Terms are immutable and share structure on copy.
class Term {
 public:
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args = {});

  bool is_variable() const { return rep_->var; }
  bool is_compound() const { return !rep_->var; }
  const std::string& symbol() const { return rep_->sym; }
  const std::vector<Term>& args() const { return rep_->args; }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  struct Rep {
    bool var;
    std::string sym;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Reserved predicate symbol backing infix equality literals. Rendered as
// `a=b` / `a!=b`; no equational reasoning is attached to it internally.
inline const std::string kEqualitySymbol = "=";

struct Literal {
  bool positive = true;
  Term atom;  // always a compound whose functor is the predicate symbol

  Literal(bool pos, Term a) : positive(pos), atom(std::move(a)) {}
  Literal negated() const { return Literal(!positive, atom); }
  bool operator==(const Literal& o) const {
    return positive == o.positive && atom == o.atom;
  }
  bool operator!=(const Literal& o) const { return !(*this == o); }
};

// A disjunction of literals. The empty clause is the contradiction.
// Variables are implicitly universally quantified per clause; literal
// order is preserved as written.
struct Clause {
  std::vector<Literal> literals;

  Clause() = default;
  explicit Clause(std::vector<Literal> lits) : literals(std::move(lits)) {}

  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
  bool operator==(const Clause& o) const { return literals == o.literals; }
  bool operator!=(const Clause& o) const { return !(*this == o); }
};

enum class Role { kAxiom, kDerived, kConjecture };

const char* to_string(Role role);

struct AnnotatedClause {
  std::string name;
  Role role = Role::kAxiom;
  Clause clause;
  std::string source_domain;
};

// Symbol occurrence statistics over a clause set. A symbol counts once per
// clause it appears in; cooccurrence counts clauses containing both symbols
// of an unordered pair. Variables are not signature symbols.
struct SignatureStats {
  std::map<std::string, int> occurrence;
  std::map<std::pair<std::string, std::string>, int> cooccurrence;

  int occurrences(const std::string& s) const;
  int cooccurrences(const std::string& s, const std::string& t) const;
};

std::string render_term(const Term& t);
std::string render_literal(const Literal& lit);

// Renders `(lit|lit|...)`; the empty clause renders as "($false)".
std::string render_clause(const Clause& c);

// Renders a full `cnf(name,role,(...))` record without trailing period.
std::string render_annotated(const AnnotatedClause& ac);

// Renames variables to X1..Xn by first occurrence order. Idempotent.
Clause normalize_variables(const Clause& c);

// Total number of symbol occurrences (functors, predicates, variables)
// across all literals. Polarity does not count.
int clause_weight(const Clause& c);

// True when the clause contains a literal and its exact negation.
bool is_tautology(const Clause& c);

// Distinct signature symbols (functors and predicates, no variables) of a
// clause, sorted.
std::vector<std::string> clause_symbols(const Clause& c);

// Variables of a clause in first-occurrence order.
std::vector<std::string> clause_variables(const Clause& c);

// Order-insensitive canonical form: equal keys iff the clauses are equal
// up to literal reordering and variable renaming (for the clause shapes
// arising from resolution; see canonical_equal).
std::string canonical_key(const Clause& c);

bool canonical_equal(const Clause& a, const Clause& b);

SignatureStats signature_stats(const std::vector<Clause>& clauses);

}  // namespace clauseforge
