#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clauseforge/formula.hpp"

namespace clauseforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses a single `cnf(name,role,(formula)).` record. Whitespace tolerant;
// `%` starts a line comment; `~` negates; `|` disjoins; `=` / `!=` are
// infix equality literals.
AnnotatedClause parse_annotated_clause(const std::string& text);

// Parses a bare clause body, with or without the outer parentheses.
Clause parse_clause(const std::string& text);

// Parses every cnf record in a buffer. `include(...)` directives raise
// unless a file context is given via parse_tptp_file.
std::vector<AnnotatedClause> parse_tptp(const std::string& text);

// Parses a TPTP file, resolving include('...') directives against
// `tptp_root` first and the including file's directory second.
std::vector<AnnotatedClause> parse_tptp_file(const std::string& path,
                                             const std::string& tptp_root = "");

}  // namespace clauseforge
