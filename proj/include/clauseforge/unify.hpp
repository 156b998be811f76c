#pragma once

#include <map>
#include <optional>
#include <string>

#include "clauseforge/formula.hpp"

namespace clauseforge {

// Variable bindings. Bindings may chain (X -> Y, Y -> f(a)); substitute()
// resolves chains fully.
using Subst = std::map<std::string, Term>;

Term substitute(const Term& t, const Subst& subst);
Literal substitute(const Literal& lit, const Subst& subst);
Clause substitute(const Clause& c, const Subst& subst);

// Most general unifier of two terms, extending `base`. Occurs check on.
std::optional<Subst> unify(const Term& a, const Term& b, Subst base = {});

// One-way matching: binds variables of `pattern` only so that
// substitute(pattern) == target. Variables of `target` behave as constants.
std::optional<Subst> match(const Term& pattern, const Term& target, Subst base = {});

// Renames every variable of `c` with the given suffix.
Clause rename_with_suffix(const Clause& c, const std::string& suffix);

// True iff `general` maps onto a sub-multiset of `specific` under some
// substitution (theta-subsumption, multiset semantics: a longer clause
// never subsumes a shorter one).
bool subsumes(const Clause& general, const Clause& specific);

}  // namespace clauseforge
