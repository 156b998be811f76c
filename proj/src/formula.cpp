#include "clauseforge/formula.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clauseforge {

Term Term::variable(std::string name) {
  auto rep = std::make_shared<Rep>();
  rep->var = true;
  rep->sym = std::move(name);
  return Term(std::move(rep));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (functor.empty()) throw std::invalid_argument("empty functor name");
  auto rep = std::make_shared<Rep>();
  rep->var = false;
  rep->sym = std::move(functor);
  rep->args = std::move(args);
  return Term(std::move(rep));
}

bool Term::operator==(const Term& other) const {
  if (rep_ == other.rep_) return true;
  if (rep_->var != other.rep_->var || rep_->sym != other.rep_->sym) return false;
  if (rep_->args.size() != other.rep_->args.size()) return false;
  for (std::size_t i = 0; i < rep_->args.size(); ++i) {
    if (rep_->args[i] != other.rep_->args[i]) return false;
  }
  return true;
}

const char* to_string(Role role) {
  switch (role) {
    case Role::kAxiom: return "axiom";
    case Role::kDerived: return "derived";
    case Role::kConjecture: return "conjecture";
  }
  return "unknown";
}

int SignatureStats::occurrences(const std::string& s) const {
  auto it = occurrence.find(s);
  return it == occurrence.end() ? 0 : it->second;
}

int SignatureStats::cooccurrences(const std::string& s, const std::string& t) const {
  auto key = s < t ? std::make_pair(s, t) : std::make_pair(t, s);
  auto it = cooccurrence.find(key);
  return it == cooccurrence.end() ? 0 : it->second;
}

std::string render_term(const Term& t) {
  std::string out = t.symbol();
  if (t.is_compound() && !t.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i > 0) out += ',';
      out += render_term(t.args()[i]);
    }
    out += ')';
  }
  return out;
}

std::string render_literal(const Literal& lit) {
  if (lit.atom.is_compound() && lit.atom.symbol() == kEqualitySymbol &&
      lit.atom.args().size() == 2) {
    return render_term(lit.atom.args()[0]) + (lit.positive ? "=" : "!=") +
           render_term(lit.atom.args()[1]);
  }
  return (lit.positive ? "" : "~") + render_term(lit.atom);
}

std::string render_clause(const Clause& c) {
  if (c.empty()) return "($false)";
  std::string out = "(";
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i > 0) out += '|';
    out += render_literal(c.literals[i]);
  }
  out += ')';
  return out;
}

std::string render_annotated(const AnnotatedClause& ac) {
  return "cnf(" + ac.name + "," + to_string(ac.role) + "," +
         render_clause(ac.clause) + ")";
}

namespace {

Term rename_term(const Term& t, std::map<std::string, std::string>& names) {
  if (t.is_variable()) {
    auto it = names.find(t.symbol());
    if (it == names.end()) {
      std::string fresh = "X" + std::to_string(names.size() + 1);
      it = names.emplace(t.symbol(), std::move(fresh)).first;
    }
    return Term::variable(it->second);
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_term(a, names));
  return Term::compound(t.symbol(), std::move(args));
}

void walk_symbols(const Term& t, int* weight, std::set<std::string>* symbols,
                  std::vector<std::string>* vars_in_order,
                  std::set<std::string>* seen_vars) {
  if (weight) ++*weight;
  if (t.is_variable()) {
    if (vars_in_order && seen_vars->insert(t.symbol()).second) {
      vars_in_order->push_back(t.symbol());
    }
    return;
  }
  if (symbols) symbols->insert(t.symbol());
  for (const Term& a : t.args()) {
    walk_symbols(a, weight, symbols, vars_in_order, seen_vars);
  }
}

// Literal shape with variables masked; used only to fix a literal order
// that does not depend on variable names.
std::string literal_skeleton(const Literal& lit) {
  std::string out = lit.positive ? "+" : "-";
  struct Walker {
    static void go(const Term& t, std::string& out) {
      if (t.is_variable()) {
        out += '*';
        return;
      }
      out += t.symbol();
      if (!t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i > 0) out += ',';
          go(t.args()[i], out);
        }
        out += ')';
      }
    }
  };
  Walker::go(lit.atom, out);
  return out;
}

}  // namespace

Clause normalize_variables(const Clause& c) {
  std::map<std::string, std::string> names;
  std::vector<Literal> lits;
  lits.reserve(c.literals.size());
  for (const Literal& lit : c.literals) {
    lits.emplace_back(lit.positive, rename_term(lit.atom, names));
  }
  return Clause(std::move(lits));
}

int clause_weight(const Clause& c) {
  int weight = 0;
  std::set<std::string> seen;
  for (const Literal& lit : c.literals) {
    walk_symbols(lit.atom, &weight, nullptr, nullptr, &seen);
  }
  return weight;
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      if (c.literals[i].positive != c.literals[j].positive &&
          c.literals[i].atom == c.literals[j].atom) {
        return true;
      }
    }
  }
  return false;
}

std::vector<std::string> clause_symbols(const Clause& c) {
  std::set<std::string> symbols;
  std::set<std::string> seen;
  for (const Literal& lit : c.literals) {
    walk_symbols(lit.atom, nullptr, &symbols, nullptr, &seen);
  }
  return {symbols.begin(), symbols.end()};
}

std::vector<std::string> clause_variables(const Clause& c) {
  std::vector<std::string> vars;
  std::set<std::string> seen;
  for (const Literal& lit : c.literals) {
    walk_symbols(lit.atom, nullptr, nullptr, &vars, &seen);
  }
  return vars;
}

std::string canonical_key(const Clause& c) {
  std::vector<std::size_t> order(c.literals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::string> skeletons;
  skeletons.reserve(c.literals.size());
  for (const Literal& lit : c.literals) skeletons.push_back(literal_skeleton(lit));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return skeletons[a] < skeletons[b];
  });
  Clause reordered;
  reordered.literals.reserve(c.literals.size());
  for (std::size_t i : order) reordered.literals.push_back(c.literals[i]);
  return render_clause(normalize_variables(reordered));
}

bool canonical_equal(const Clause& a, const Clause& b) {
  return a.literals.size() == b.literals.size() && canonical_key(a) == canonical_key(b);
}

SignatureStats signature_stats(const std::vector<Clause>& clauses) {
  SignatureStats stats;
  for (const Clause& c : clauses) {
    std::vector<std::string> symbols = clause_symbols(c);
    for (const std::string& s : symbols) ++stats.occurrence[s];
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      for (std::size_t j = i + 1; j < symbols.size(); ++j) {
        ++stats.cooccurrence[{symbols[i], symbols[j]}];
      }
    }
  }
  return stats;
}

}  // namespace clauseforge
