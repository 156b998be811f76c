#include "clauseforge/unify.hpp"

#include <vector>

namespace clauseforge {

namespace {

// Follows binding chains until a non-variable or an unbound variable.
const Term* walk(const Term* t, const Subst& subst) {
  while (t->is_variable()) {
    auto it = subst.find(t->symbol());
    if (it == subst.end()) break;
    t = &it->second;
  }
  return t;
}

bool occurs(const std::string& var, const Term& t, const Subst& subst) {
  const Term* w = walk(&t, subst);
  if (w->is_variable()) return w->symbol() == var;
  for (const Term& a : w->args()) {
    if (occurs(var, a, subst)) return true;
  }
  return false;
}

bool unify_into(const Term& a, const Term& b, Subst& subst) {
  const Term* wa = walk(&a, subst);
  const Term* wb = walk(&b, subst);
  if (wa->is_variable()) {
    if (wb->is_variable() && wb->symbol() == wa->symbol()) return true;
    if (occurs(wa->symbol(), *wb, subst)) return false;
    subst.emplace(wa->symbol(), *wb);
    return true;
  }
  if (wb->is_variable()) {
    if (occurs(wb->symbol(), *wa, subst)) return false;
    subst.emplace(wb->symbol(), *wa);
    return true;
  }
  if (wa->symbol() != wb->symbol() || wa->args().size() != wb->args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < wa->args().size(); ++i) {
    if (!unify_into(wa->args()[i], wb->args()[i], subst)) return false;
  }
  return true;
}

bool match_into(const Term& pattern, const Term& target, Subst& subst) {
  if (pattern.is_variable()) {
    auto it = subst.find(pattern.symbol());
    if (it != subst.end()) return it->second == target;
    subst.emplace(pattern.symbol(), target);
    return true;
  }
  if (target.is_variable()) return false;
  if (pattern.symbol() != target.symbol() ||
      pattern.args().size() != target.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match_into(pattern.args()[i], target.args()[i], subst)) return false;
  }
  return true;
}

}  // namespace

Term substitute(const Term& t, const Subst& subst) {
  const Term* w = walk(&t, subst);
  if (w->is_variable()) return *w;
  if (w->args().empty()) return *w;
  std::vector<Term> args;
  args.reserve(w->args().size());
  for (const Term& a : w->args()) args.push_back(substitute(a, subst));
  return Term::compound(w->symbol(), std::move(args));
}

Literal substitute(const Literal& lit, const Subst& subst) {
  return Literal(lit.positive, substitute(lit.atom, subst));
}

Clause substitute(const Clause& c, const Subst& subst) {
  std::vector<Literal> lits;
  lits.reserve(c.literals.size());
  for (const Literal& lit : c.literals) lits.push_back(substitute(lit, subst));
  return Clause(std::move(lits));
}

std::optional<Subst> unify(const Term& a, const Term& b, Subst base) {
  if (unify_into(a, b, base)) return base;
  return std::nullopt;
}

std::optional<Subst> match(const Term& pattern, const Term& target, Subst base) {
  if (match_into(pattern, target, base)) return base;
  return std::nullopt;
}

namespace {

Term suffix_vars(const Term& t, const std::string& suffix) {
  if (t.is_variable()) return Term::variable(t.symbol() + suffix);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(suffix_vars(a, suffix));
  return Term::compound(t.symbol(), std::move(args));
}

bool subsume_search(const Clause& general, const Clause& specific,
                    std::size_t next, std::vector<bool>& used, Subst& subst) {
  if (next == general.literals.size()) return true;
  const Literal& glit = general.literals[next];
  for (std::size_t i = 0; i < specific.literals.size(); ++i) {
    if (used[i]) continue;
    const Literal& slit = specific.literals[i];
    if (glit.positive != slit.positive) continue;
    Subst attempt = subst;
    if (!match_into(glit.atom, slit.atom, attempt)) continue;
    used[i] = true;
    Subst saved = std::move(subst);
    subst = std::move(attempt);
    if (subsume_search(general, specific, next + 1, used, subst)) return true;
    subst = std::move(saved);
    used[i] = false;
  }
  return false;
}

}  // namespace

Clause rename_with_suffix(const Clause& c, const std::string& suffix) {
  std::vector<Literal> lits;
  lits.reserve(c.literals.size());
  for (const Literal& lit : c.literals) {
    lits.emplace_back(lit.positive, suffix_vars(lit.atom, suffix));
  }
  return Clause(std::move(lits));
}

bool subsumes(const Clause& general, const Clause& specific) {
  if (general.literals.size() > specific.literals.size()) return false;
  std::vector<bool> used(specific.literals.size(), false);
  Subst subst;
  return subsume_search(general, specific, 0, used, subst);
}

}  // namespace clauseforge
