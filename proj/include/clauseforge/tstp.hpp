#pragma once

#include <optional>
#include <string>

#include "clauseforge/prover.hpp"

namespace clauseforge {

// Parses prover derivation output: `cnf(name, role, formula, source).`
// records where source is `inference(rule,[...],[parents])` (possibly
// nested), `file('path', name)`, or a bare parent name. Lines that are not
// cnf records (comments, status lines, fof forms) are skipped. Malformed
// cnf records raise ParseError carrying the offending text.
SaturationOutput parse_tstp_derivation(const std::string& text);

// Extracts the status word from the first `% SZS status <word>` line.
std::optional<std::string> find_szs_status(const std::string& text);

// Maps an SZS status word onto a verdict: Theorem/Unsatisfiable ->
// Entailed, CounterSatisfiable/Satisfiable -> NotEntailed, anything else
// (or no status) -> ResourceOut.
VerdictKind verdict_from_szs(const std::optional<std::string>& status);

}  // namespace clauseforge
