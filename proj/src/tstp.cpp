#include "clauseforge/tstp.hpp"

#include <cctype>
#include <sstream>

#include "clauseforge/parse.hpp"

namespace clauseforge {

namespace {

// Minimal generic reader for annotation terms (sources, info lists).
// Handles atoms, 'quoted' atoms, numbers, compounds, and [lists].
struct AnnTerm {
  std::string head;            // atom/functor text; "[]" for lists
  std::vector<AnnTerm> args;
};

class AnnReader {
 public:
  explicit AnnReader(const std::string& s) : s_(s) {}

  AnnTerm read() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '[') return read_list();
    AnnTerm t;
    t.head = read_atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      t.args.push_back(read());
      skip();
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        t.args.push_back(read());
        skip();
      }
      expect(')');
    }
    return t;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

  std::size_t pos() const { return pos_; }

 private:
  AnnTerm read_list() {
    AnnTerm t;
    t.head = "[]";
    expect('[');
    skip();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return t;
    }
    t.args.push_back(read());
    skip();
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      t.args.push_back(read());
      skip();
    }
    expect(']');
    return t;
  }

  std::string read_atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of annotation", 1, 1);
    if (s_[pos_] == '\'') {
      ++pos_;
      std::string out;
      while (pos_ < s_.size() && s_[pos_] != '\'') out += s_[pos_++];
      if (pos_ >= s_.size()) throw ParseError("unterminated quoted atom", 1, 1);
      ++pos_;
      return out;
    }
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
          c == '.' || c == '-' || c == '+') {
        out += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (out.empty()) throw ParseError("bad annotation term", 1, 1);
    return out;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "' in annotation", 1, 1);
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

bool looks_like_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

void collect_parent_names(const AnnTerm& t, std::vector<std::string>& out) {
  if (t.head == "inference" && t.args.size() == 3) {
    collect_parent_names(t.args[2], out);
    return;
  }
  if (t.head == "[]") {
    for (const AnnTerm& a : t.args) collect_parent_names(a, out);
    return;
  }
  if (t.args.empty() && looks_like_name(t.head) &&
      !std::isdigit(static_cast<unsigned char>(t.head[0]))) {
    out.push_back(t.head);
  }
  // Everything else (theory(...), bind(...), numbers) carries no parent.
}

// Splits a buffer into top-level records terminated by '.' outside
// parentheses, brackets, and quotes; strips %/# comment lines.
std::vector<std::string> split_records(const std::string& text) {
  std::vector<std::string> records;
  std::string current;
  int depth = 0;
  bool in_quote = false;
  bool in_comment = false;
  for (char c : text) {
    if (in_comment) {
      if (c == '\n') in_comment = false;
      continue;
    }
    if (!in_quote && (c == '%' || c == '#')) {
      in_comment = true;
      continue;
    }
    if (c == '\'') in_quote = !in_quote;
    if (!in_quote) {
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == '.' && depth == 0) {
        records.push_back(current);
        current.clear();
        continue;
      }
    }
    current += c;
  }
  // A trailing fragment without '.' is a truncated flush; ignore it.
  return records;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits the inside of cnf(...) into top-level comma-separated fields.
std::vector<std::string> split_fields(const std::string& body) {
  std::vector<std::string> fields;
  std::string current;
  int depth = 0;
  bool in_quote = false;
  for (char c : body) {
    if (c == '\'') in_quote = !in_quote;
    if (!in_quote) {
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == ',' && depth == 0) {
        fields.push_back(trim(current));
        current.clear();
        continue;
      }
    }
    current += c;
  }
  fields.push_back(trim(current));
  return fields;
}

}  // namespace

SaturationOutput parse_tstp_derivation(const std::string& text) {
  SaturationOutput out;
  for (const std::string& raw : split_records(text)) {
    std::string record = trim(raw);
    if (record.rfind("cnf", 0) != 0) continue;
    std::size_t open = record.find('(');
    std::size_t close = record.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close <= open) {
      throw ParseError("malformed record: " + record, 1, 1);
    }
    std::vector<std::string> fields = split_fields(record.substr(open + 1, close - open - 1));
    if (fields.size() < 3) {
      throw ParseError("cnf record with fewer than 3 fields: " + record, 1, 1);
    }
    DerivationRecord rec;
    rec.name = fields[0];
    if (!rec.name.empty() && rec.name.front() == '\'') {
      rec.name = rec.name.substr(1, rec.name.size() - 2);
    }
    try {
      rec.clause = parse_clause(fields[2]);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad formula in record: ") + record + " (" + e.what() + ")", 1, 1);
    }
    const std::string& role = fields[1];
    if (fields.size() >= 4) {
      AnnReader reader(fields[3]);
      AnnTerm source = reader.read();
      if (source.head == "file") {
        rec.role = Role::kAxiom;
        rec.rule = "input";
      } else if (source.head == "inference") {
        rec.role = role == "negated_conjecture" ? Role::kConjecture : Role::kDerived;
        rec.rule = source.args.empty() ? "inference" : source.args[0].head;
        collect_parent_names(source, rec.parents);
      } else {
        // Bare parent name or an opaque source: keep the referenced parent
        // if it looks like one, role from the record.
        rec.role = role == "axiom" || role == "hypothesis" ? Role::kAxiom
                   : role == "negated_conjecture"          ? Role::kConjecture
                                                           : Role::kDerived;
        if (looks_like_name(source.head) && source.args.empty() &&
            !std::isdigit(static_cast<unsigned char>(source.head[0]))) {
          rec.parents.push_back(source.head);
          rec.rule = "copy";
        } else {
          rec.rule = "input";
        }
      }
    } else {
      rec.role = role == "negated_conjecture" ? Role::kConjecture : Role::kAxiom;
      rec.rule = "input";
    }
    out.records.push_back(std::move(rec));
  }
  auto status = find_szs_status(text);
  out.complete = status.has_value() &&
                 (*status == "Satisfiable" || *status == "CounterSatisfiable" ||
                  *status == "Unsatisfiable" || *status == "Theorem");
  return out;
}

std::optional<std::string> find_szs_status(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t at = line.find("SZS status");
    if (at == std::string::npos) continue;
    std::istringstream rest(line.substr(at + std::string("SZS status").size()));
    std::string word;
    if (rest >> word) return word;
  }
  return std::nullopt;
}

VerdictKind verdict_from_szs(const std::optional<std::string>& status) {
  if (!status) return VerdictKind::kResourceOut;
  if (*status == "Theorem" || *status == "Unsatisfiable") return VerdictKind::kEntailed;
  if (*status == "CounterSatisfiable" || *status == "Satisfiable") {
    return VerdictKind::kNotEntailed;
  }
  return VerdictKind::kResourceOut;
}

}  // namespace clauseforge
