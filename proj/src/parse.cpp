#include "clauseforge/parse.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace clauseforge {

namespace {

enum class TokKind {
  kLower,    // lower_word or 'quoted'
  kUpper,    // variable
  kDollar,   // $false / $true
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kPipe,
  kTilde,
  kEq,
  kNeq,
  kDot,
  kEnd,
};

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {TokKind::kEnd, "", line, col};
    char c = text_[pos_];
    if (c == '(') return simple(TokKind::kLParen, "(");
    if (c == ')') return simple(TokKind::kRParen, ")");
    if (c == '[') return simple(TokKind::kLBracket, "[");
    if (c == ']') return simple(TokKind::kRBracket, "]");
    if (c == ',') return simple(TokKind::kComma, ",");
    if (c == '|') return simple(TokKind::kPipe, "|");
    if (c == '~') return simple(TokKind::kTilde, "~");
    if (c == '.') return simple(TokKind::kDot, ".");
    if (c == '=') return simple(TokKind::kEq, "=");
    if (c == '!') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        advance();
        advance();
        return {TokKind::kNeq, "!=", line, col};
      }
      fail("unexpected '!'", line, col);
    }
    if (c == '\'') {
      advance();
      std::string word;
      while (pos_ < text_.size() && text_[pos_] != '\'') {
        word += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated quoted atom", line, col);
      advance();
      return {TokKind::kLower, word, line, col};
    }
    if (c == '$') {
      advance();
      std::string word = "$";
      while (pos_ < text_.size() && is_word_char(text_[pos_])) {
        word += text_[pos_];
        advance();
      }
      return {TokKind::kDollar, word, line, col};
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() && is_word_char(text_[pos_])) {
        word += text_[pos_];
        advance();
      }
      return {TokKind::kUpper, word, line, col};
    }
    if (std::islower(static_cast<unsigned char>(c)) ||
        std::isdigit(static_cast<unsigned char>(c))) {
      std::string word;
      while (pos_ < text_.size() && is_word_char(text_[pos_])) {
        word += text_[pos_];
        advance();
      }
      return {TokKind::kLower, word, line, col};
    }
    fail(std::string("unexpected character '") + c + "'", line, col);
    return {};  // unreachable
  }

  [[noreturn]] static void fail(const std::string& msg, int line, int col) {
    throw ParseError(msg, line, col);
  }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Token simple(TokKind kind, std::string text) {
    Token tok{kind, std::move(text), line_, col_};
    advance();
    return tok;
  }

  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { shift(); }

  bool at_end() const { return tok_.kind == TokKind::kEnd; }

  // cnf(name, role, formula). | include('path').
  // Returns false for an include directive, filling `include_path`.
  bool parse_record(AnnotatedClause* out, std::string* include_path) {
    Token head = expect(TokKind::kLower, "record keyword");
    if (head.text == "include") {
      expect(TokKind::kLParen, "'('");
      Token path = expect(TokKind::kLower, "include path");
      *include_path = path.text;
      expect(TokKind::kRParen, "')'");
      expect(TokKind::kDot, "'.'");
      return false;
    }
    if (head.text != "cnf") {
      Lexer::fail("expected 'cnf' or 'include', got '" + head.text + "'",
                  head.line, head.column);
    }
    expect(TokKind::kLParen, "'('");
    Token name = expect(TokKind::kLower, "clause name");
    expect(TokKind::kComma, "','");
    Token role = expect(TokKind::kLower, "role");
    expect(TokKind::kComma, "','");
    out->name = name.text;
    out->role = parse_role(role);
    out->clause = parse_formula();
    expect(TokKind::kRParen, "')'");
    expect(TokKind::kDot, "'.'");
    return true;
  }

  Clause parse_bare_clause() {
    Clause c = parse_formula();
    if (!at_end()) {
      Lexer::fail("trailing input after clause", tok_.line, tok_.column);
    }
    return c;
  }

 private:
  static Role parse_role(const Token& tok) {
    const std::string& r = tok.text;
    if (r == "axiom" || r == "hypothesis" || r == "definition" ||
        r == "assumption") {
      return Role::kAxiom;
    }
    if (r == "plain" || r == "derived" || r == "lemma" || r == "theorem" ||
        r == "corollary") {
      return Role::kDerived;
    }
    if (r == "conjecture" || r == "negated_conjecture") {
      return Role::kConjecture;
    }
    Lexer::fail("unsupported role '" + r + "'", tok.line, tok.column);
  }

  // formula := disjunction | '(' disjunction ')'
  Clause parse_formula() {
    bool wrapped = false;
    if (tok_.kind == TokKind::kLParen) {
      // Lookahead is unnecessary: a leading '(' always wraps the whole
      // disjunction in CNF records.
      wrapped = true;
      shift();
    }
    Clause c;
    if (tok_.kind == TokKind::kDollar && tok_.text == "$false") {
      shift();  // empty clause sentinel
    } else {
      c.literals.push_back(parse_literal());
      while (tok_.kind == TokKind::kPipe) {
        shift();
        c.literals.push_back(parse_literal());
      }
    }
    if (wrapped) expect(TokKind::kRParen, "')'");
    return c;
  }

  Literal parse_literal() {
    bool positive = true;
    if (tok_.kind == TokKind::kTilde) {
      positive = false;
      shift();
    }
    Token start = tok_;
    Term atom = parse_term();
    if (tok_.kind == TokKind::kEq || tok_.kind == TokKind::kNeq) {
      bool neq = tok_.kind == TokKind::kNeq;
      shift();
      Term rhs = parse_term();
      if (neq) positive = !positive;
      return Literal(positive,
                     Term::compound(kEqualitySymbol, {std::move(atom), std::move(rhs)}));
    }
    if (atom.is_variable()) {
      Lexer::fail("a literal atom cannot be a bare variable", start.line,
                  start.column);
    }
    return Literal(positive, std::move(atom));
  }

  Term parse_term() {
    if (tok_.kind == TokKind::kUpper) {
      std::string name = tok_.text;
      shift();
      return Term::variable(std::move(name));
    }
    Token functor = expect(TokKind::kLower, "term");
    std::vector<Term> args;
    if (tok_.kind == TokKind::kLParen) {
      shift();
      args.push_back(parse_term());
      while (tok_.kind == TokKind::kComma) {
        shift();
        args.push_back(parse_term());
      }
      expect(TokKind::kRParen, "')'");
    }
    return Term::compound(functor.text, std::move(args));
  }

  Token expect(TokKind kind, const std::string& what) {
    if (tok_.kind != kind) {
      Lexer::fail("expected " + what + ", got '" + tok_.text + "'", tok_.line,
                  tok_.column);
    }
    Token t = tok_;
    shift();
    return t;
  }

  void shift() { tok_ = lexer_.next(); }

  Lexer lexer_;
  Token tok_{TokKind::kEnd, "", 1, 1};
};

std::vector<AnnotatedClause> parse_buffer(const std::string& text,
                                          const std::string& current_file,
                                          const std::string& tptp_root,
                                          std::set<std::string>* visited) {
  std::vector<AnnotatedClause> out;
  Parser parser(text);
  while (!parser.at_end()) {
    AnnotatedClause ac;
    std::string include_path;
    if (parser.parse_record(&ac, &include_path)) {
      out.push_back(std::move(ac));
      continue;
    }
    if (visited == nullptr) {
      throw ParseError("include directive outside a file context", 1, 1);
    }
    namespace fs = std::filesystem;
    fs::path resolved;
    if (!tptp_root.empty() && fs::exists(fs::path(tptp_root) / include_path)) {
      resolved = fs::path(tptp_root) / include_path;
    } else if (!current_file.empty() &&
               fs::exists(fs::path(current_file).parent_path() / include_path)) {
      resolved = fs::path(current_file).parent_path() / include_path;
    } else {
      resolved = include_path;
    }
    std::string key = fs::weakly_canonical(resolved).string();
    if (!visited->insert(key).second) continue;  // already included
    std::ifstream in(resolved);
    if (!in) {
      throw ParseError("cannot open include '" + include_path + "'", 1, 1);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto included = parse_buffer(buf.str(), resolved.string(), tptp_root, visited);
    for (auto& inc : included) out.push_back(std::move(inc));
  }
  return out;
}

}  // namespace

AnnotatedClause parse_annotated_clause(const std::string& text) {
  Parser parser(text);
  AnnotatedClause ac;
  std::string include_path;
  if (!parser.parse_record(&ac, &include_path)) {
    throw ParseError("expected a cnf record, got an include directive", 1, 1);
  }
  return ac;
}

Clause parse_clause(const std::string& text) {
  Parser parser(text);
  return parser.parse_bare_clause();
}

std::vector<AnnotatedClause> parse_tptp(const std::string& text) {
  std::vector<AnnotatedClause> out;
  Parser parser(text);
  while (!parser.at_end()) {
    AnnotatedClause ac;
    std::string include_path;
    if (!parser.parse_record(&ac, &include_path)) {
      throw ParseError("include directive outside a file context", 1, 1);
    }
    out.push_back(std::move(ac));
  }
  return out;
}

std::vector<AnnotatedClause> parse_tptp_file(const std::string& path,
                                             const std::string& tptp_root) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'", 1, 1);
  std::stringstream buf;
  buf << in.rdbuf();
  std::set<std::string> visited;
  visited.insert(std::filesystem::weakly_canonical(path).string());
  return parse_buffer(buf.str(), path, tptp_root, &visited);
}

}  // namespace clauseforge
