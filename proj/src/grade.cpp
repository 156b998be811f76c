#include "clauseforge/grade.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace clauseforge {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Counts standalone case-insensitive occurrences of `word` in text.
int count_word(const std::string& text, const std::string& word) {
  int count = 0;
  for (std::size_t i = 0; i + word.size() <= text.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < word.size(); ++j) {
      if (std::tolower(static_cast<unsigned char>(text[i + j])) != word[j]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    bool left_ok = i == 0 || !is_word_char(text[i - 1]);
    std::size_t end = i + word.size();
    bool right_ok = end >= text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) ++count;
  }
  return count;
}

ParsedAnswer parse_entailment_answer(const std::string& text) {
  ParsedAnswer out;
  out.kind = TaskKind::kEntailment;
  int trues = count_word(text, "true");
  int falses = count_word(text, "false");
  if (trues + falses != 1) {
    out.error = "format";
    return out;
  }
  out.ok = true;
  out.truth = trues == 1;
  return out;
}

ParsedAnswer parse_selection_answer(const std::string& text) {
  ParsedAnswer out;
  out.kind = TaskKind::kSelection;
  std::set<int> indices;
  bool in_number = false;
  long value = 0;
  bool any = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      value = value * 10 + (c - '0');
      in_number = true;
      if (value > 1000000) {
        out.error = "format";
        return out;
      }
      continue;
    }
    if (in_number) {
      indices.insert(static_cast<int>(value));
      value = 0;
      in_number = false;
      any = true;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' ||
        c == ']' || c == '`' || c == '.') {
      continue;
    }
    out.error = "format";
    return out;
  }
  if (in_number) {
    indices.insert(static_cast<int>(value));
    any = true;
  }
  if (!any) {
    out.error = "format";
    return out;
  }
  for (int i : indices) {
    if (i <= 0) {
      out.error = "format";
      return out;
    }
  }
  out.ok = true;
  out.indices.assign(indices.begin(), indices.end());
  return out;
}

ParsedAnswer parse_reconstruction_answer(const std::string& text) {
  ParsedAnswer out;
  out.kind = TaskKind::kReconstruction;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;  // blank line
    std::size_t b = line.find_last_not_of(" \t\r");
    std::string step = line.substr(a, b - a + 1);
    // child <- p1, p2 with flexible spacing
    std::istringstream ss(step);
    int child = 0, p1 = 0, p2 = 0;
    char l = 0, r = 0, comma = 0;
    if (!(ss >> child >> l >> r >> p1 >> comma >> p2) || l != '<' || r != '-' ||
        comma != ',' || child <= 0 || p1 <= 0 || p2 <= 0) {
      out.error = "format";
      out.triples.clear();
      return out;
    }
    std::string rest;
    if (ss >> rest) {
      out.error = "format";
      out.triples.clear();
      return out;
    }
    out.triples.push_back({child, p1, p2});
  }
  if (out.triples.empty()) {
    out.error = "format";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace

ParsedAnswer parse_answer(TaskKind kind, const std::string& text) {
  switch (kind) {
    case TaskKind::kEntailment: return parse_entailment_answer(text);
    case TaskKind::kSelection: return parse_selection_answer(text);
    case TaskKind::kReconstruction: return parse_reconstruction_answer(text);
  }
  ParsedAnswer out;
  out.error = "format";
  return out;
}

GradeReport grade_entailment(const EntailmentTask& task, const std::string& answer_text) {
  GradeReport report;
  ParsedAnswer answer = parse_answer(TaskKind::kEntailment, answer_text);
  if (!answer.ok) {
    report.failure_reason = answer.error;
    return report;
  }
  report.score = answer.truth == task.label ? 1.0 : 0.0;
  return report;
}

GradeReport grade_selection(const SelectionTask& task, const std::string& answer_text) {
  GradeReport report;
  ParsedAnswer answer = parse_answer(TaskKind::kSelection, answer_text);
  if (!answer.ok) {
    report.failure_reason = answer.error;
    return report;
  }
  report.score = answer.indices == task.answer ? 1.0 : 0.0;
  return report;
}

GradeReport grade_reconstruction(const ReconstructionTask& task,
                                 const std::string& answer_text,
                                 const EntailmentOracle& oracle,
                                 const ReconstructionGradeOptions& options) {
  GradeReport report;
  ParsedAnswer answer = parse_answer(TaskKind::kReconstruction, answer_text);
  if (!answer.ok) {
    report.structural_ok = false;
    report.failure_reason = answer.error;
    return report;
  }
  int n = static_cast<int>(task.clauses.size());

  // Stage 1: structural coherence.
  std::set<int> children;
  std::set<int> used;
  for (const auto& t : answer.triples) {
    if (t[0] > n || t[1] > n || t[2] > n) {
      report.structural_ok = false;
      report.failure_reason = "index out of range";
      return report;
    }
    if (t[1] == t[2]) {
      report.structural_ok = false;
      report.failure_reason = "parents must be distinct";
      return report;
    }
    if (!children.insert(t[0]).second) {
      report.structural_ok = false;
      report.failure_reason = "clause derived more than once";
      return report;
    }
    used.insert(t[0]);
    used.insert(t[1]);
    used.insert(t[2]);
  }
  // Acyclicity over parent -> child edges.
  {
    std::vector<std::vector<int>> out_edges(n + 1);
    std::vector<int> incoming(n + 1, 0);
    for (const auto& t : answer.triples) {
      out_edges[t[1]].push_back(t[0]);
      out_edges[t[2]].push_back(t[0]);
      incoming[t[0]] += 2;
    }
    std::vector<int> ready;
    for (int i = 1; i <= n; ++i) {
      if (incoming[i] == 0) ready.push_back(i);
    }
    int seen = 0;
    while (!ready.empty()) {
      int at = ready.back();
      ready.pop_back();
      ++seen;
      for (int next : out_edges[at]) {
        if (--incoming[next] == 0) ready.push_back(next);
      }
    }
    if (seen != n) {
      report.structural_ok = false;
      report.failure_reason = "proposed steps contain a cycle";
      return report;
    }
  }
  if (options.strict_all_used && static_cast<int>(used.size()) != n) {
    report.structural_ok = false;
    report.failure_reason = "not all clauses used";
    return report;
  }

  // Stage 2: per-step soundness against the ground-truth step count.
  int sound = 0;
  for (const auto& t : answer.triples) {
    std::vector<Clause> parents = {task.clauses[t[1] - 1], task.clauses[t[2] - 1]};
    Verdict verdict = oracle.check(parents, task.clauses[t[0] - 1]);
    report.step_verdicts.push_back({t, verdict.kind});
    if (verdict.kind == VerdictKind::kEntailed) {
      ++sound;
    } else if (verdict.kind == VerdictKind::kResourceOut) {
      report.flagged = true;  // counted unsound, but surfaced
    }
  }
  double denom = static_cast<double>(task.answer.size());
  report.score = denom == 0 ? 0.0 : std::min(1.0, sound / denom);
  return report;
}

GradeReport grade(const TaskInstance& task, const std::string& answer_text,
                  const EntailmentOracle& oracle,
                  const ReconstructionGradeOptions& options) {
  if (const auto* e = std::get_if<EntailmentTask>(&task)) {
    return grade_entailment(*e, answer_text);
  }
  if (const auto* s = std::get_if<SelectionTask>(&task)) {
    return grade_selection(*s, answer_text);
  }
  return grade_reconstruction(std::get<ReconstructionTask>(task), answer_text, oracle,
                              options);
}

}  // namespace clauseforge
