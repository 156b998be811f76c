// Small reference prover speaking the TPTP/TSTP conventions the adapters
// expect: reads a CNF problem file, saturates, and reports an SZS status
// plus a cnf(...) derivation line per clause. Serves as the external
// prover in tests and desk runs where E or Vampire are not installed.
// Uses age-first (FIFO) clause selection, unlike the library engine.

#include <chrono>
#include <deque>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clauseforge/parse.hpp"
#include "clauseforge/prover.hpp"
#include "clauseforge/unify.hpp"

using namespace clauseforge;

namespace {

struct Entry {
  std::string name;
  Role role;
  Clause clause;
  std::vector<std::string> parents;
  std::string rule;
};

struct FifoSaturator {
  std::vector<Entry> entries;
  std::deque<std::size_t> unprocessed;
  std::vector<std::size_t> processed;
  std::set<std::string> keys;
  bool truncated = false;
  bool empty_found = false;
  int next_id = 1;
  double timeout_s;
  int max_clauses;
  int max_weight;

  bool admit(Entry entry) {
    if (is_tautology(entry.clause)) return true;
    std::string key = canonical_key(entry.clause);
    if (!entry.parents.empty()) {
      if (clause_weight(entry.clause) > max_weight) {
        truncated = true;
        return true;
      }
      if (keys.count(key)) return true;
      for (std::size_t p : processed) {
        if (subsumes(entries[p].clause, entry.clause)) return true;
      }
      if (static_cast<int>(entries.size()) >= max_clauses) {
        truncated = true;
        return false;
      }
    }
    keys.insert(key);
    bool empty = entry.clause.empty();
    unprocessed.push_back(entries.size());
    entries.push_back(std::move(entry));
    if (empty) empty_found = true;
    return !empty;
  }

  void run() {
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_s));
    while (!unprocessed.empty() && !empty_found) {
      if (std::chrono::steady_clock::now() > deadline) {
        truncated = true;
        return;
      }
      std::size_t given = unprocessed.front();
      unprocessed.pop_front();
      const Clause given_clause = entries[given].clause;
      if (is_tautology(given_clause)) continue;
      bool redundant = false;
      for (std::size_t p : processed) {
        if (subsumes(entries[p].clause, given_clause)) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;
      processed.push_back(given);
      for (const Clause& f : factor(given_clause)) {
        Entry e{fresh(), Role::kDerived, f, {entries[given].name}, "factoring"};
        if (!admit(std::move(e))) return;
      }
      for (std::size_t p : processed) {
        for (const Clause& r : resolve(entries[p].clause, given_clause)) {
          Entry e{fresh(), Role::kDerived, r,
                  {entries[p].name, entries[given].name}, "resolution"};
          if (!admit(std::move(e))) return;
        }
      }
    }
  }

  std::string fresh() { return "m_" + std::to_string(next_id++); }
};

void print_record(const Entry& e, const std::string& file) {
  std::cout << "cnf(" << e.name << ", " << (e.parents.empty() ? "axiom" : "plain")
            << ", " << render_clause(e.clause) << ", ";
  if (e.parents.empty()) {
    std::cout << "file('" << file << "', " << e.name << ")";
  } else {
    std::cout << "inference(" << e.rule << ", [status(thm)], [";
    for (std::size_t i = 0; i < e.parents.size(); ++i) {
      if (i > 0) std::cout << ", ";
      std::cout << e.parents[i];
    }
    std::cout << "])";
  }
  std::cout << ").\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference saturation prover with TSTP output"};
  std::string mode = "refute";
  double timeout_s = 5.0;
  int max_clauses = 4000;
  int max_weight = 80;
  std::string file;
  app.add_option("--mode", mode, "refute or saturate");
  app.add_option("--timeout-s", timeout_s, "CPU budget in seconds");
  app.add_option("--max-clauses", max_clauses, "Kept clause cap");
  app.add_option("--max-weight", max_weight, "Derived clause weight cap");
  app.add_option("file", file, "CNF problem file")->required();
  CLI11_PARSE(app, argc, argv);

  std::vector<AnnotatedClause> clauses;
  try {
    clauses = parse_tptp_file(file);
  } catch (const std::exception& e) {
    std::cout << "% SZS status Error\n% " << e.what() << "\n";
    return 1;
  }
  if (clauses.empty()) {
    std::cout << "% SZS status Error\n% empty problem\n";
    return 1;
  }
  bool has_conjecture = false;
  FifoSaturator engine;
  engine.timeout_s = timeout_s;
  engine.max_clauses = max_clauses;
  engine.max_weight = max_weight;
  for (const AnnotatedClause& ac : clauses) {
    if (ac.role == Role::kConjecture) has_conjecture = true;
    engine.admit({ac.name, ac.role, ac.clause, {}, "input"});
  }
  engine.run();

  if (mode == "saturate") {
    for (const Entry& e : engine.entries) print_record(e, file);
    if (engine.empty_found) {
      std::cout << "% SZS status Unsatisfiable\n";
    } else if (engine.truncated) {
      std::cout << "% SZS status ResourceOut\n";
    } else {
      std::cout << "% SZS status Satisfiable\n";
    }
    return 0;
  }

  if (engine.empty_found) {
    std::cout << "% SZS status " << (has_conjecture ? "Theorem" : "Unsatisfiable")
              << "\n";
    for (const Entry& e : engine.entries) print_record(e, file);
  } else if (engine.truncated) {
    std::cout << "% SZS status ResourceOut\n";
  } else {
    std::cout << "% SZS status " << (has_conjecture ? "CounterSatisfiable" : "Satisfiable")
              << "\n";
  }
  return 0;
}
