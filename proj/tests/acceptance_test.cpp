// Acceptance suite: end-to-end checks of the generation and grading
// pipeline on the bundled domains. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clauseforge/external.hpp"
#include "clauseforge/grade.hpp"
#include "clauseforge/pipeline.hpp"
#include "sample_fixtures.hpp"
#include "test_util.hpp"

using namespace clauseforge;
namespace fs = std::filesystem;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      problems_.push_back(what);
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  void finish(double budget_s) {
    double elapsed = seconds();
    if (elapsed > budget_s) {
      problems_.push_back("runtime " + std::to_string(elapsed) + "s over budget " +
                          std::to_string(budget_s) + "s");
    }
    if (problems_.empty()) {
      std::printf("[PASS] criterion %d: %s (%.1fs)\n", number_, title_.c_str(), elapsed);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.1fs)\n", number_, title_.c_str(), elapsed);
      for (const std::string& p : problems_) {
        std::printf("       - %s\n", p.c_str());
      }
    }
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> problems_;
};

ExternalProverConfig mock_config() {
  ExternalProverConfig config;
  config.executable = MOCKATP_BIN;
  config.saturation_args =
      "--mode saturate --timeout-s {timeout} --max-clauses 400 --max-weight 30 {file}";
  config.entailment_args =
      "--mode refute --timeout-s {timeout} --max-clauses 4000 --max-weight 80 {file}";
  config.limits = ProverLimits{5.0, 4000, 80};
  return config;
}

PipelineConfig desk_config() {
  IniFile ini = IniFile::parse(
      "[pipeline]\n"
      "seed = 42\n"
      "domains = ALG, FLD, GEO, SET, TOP\n"
      "tasks = entailment, selection, reconstruction\n"
      "levels = 1, 2, 3, 4\n"
      "instances_per_config = 2\n"
      "axiom_root = " CLAUSEFORGE_DATA_DIR "\n"
      "retry_budget = 25\n"
      "[prover.saturation]\n"
      "timeout_s = 10\n"
      "max_clauses = 300\n"
      "max_weight = 30\n"
      "[prover.oracle]\n"
      "timeout_s = 5\n"
      "max_clauses = 4000\n"
      "max_weight = 80\n");
  return PipelineConfig::from_ini(ini);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<EmittedTask> load_dataset(const std::string& path) {
  std::vector<EmittedTask> tasks;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) tasks.push_back(task_record_from_json(line));
  }
  return tasks;
}

// 1. The bundled entailment sample is certified by both oracle routes.
void criterion_1() {
  Criterion c(1, "sample premises entail the sample conclusion");
  InternalOracle internal(ProverLimits{5.0, 4000, 80});
  Verdict v = internal.check(samples::set_theory_premises(), samples::set_theory_conclusion());
  c.expect(v.kind == VerdictKind::kEntailed, "internal oracle did not return Entailed");
  ExternalOracle external(mock_config());
  Verdict ve = external.check(samples::set_theory_premises(), samples::set_theory_conclusion());
  c.expect(ve.kind == VerdictKind::kEntailed, "external oracle did not return Entailed");
  c.finish(10.0);
}

// 2. Reconstruction grading: golden answers, corrupted answers, and the
// strict/lenient split behave exactly as specified.
void criterion_2() {
  Criterion c(2, "reconstruction grading golden values");
  InternalOracle oracle(ProverLimits{5.0, 4000, 80});
  ReconstructionTask task = samples::topology_reconstruction_task();

  GradeReport perfect = grade_reconstruction(task, samples::topology_perfect_answer(), oracle);
  c.expect(perfect.structural_ok && perfect.score == 1.0,
           "known-perfect answer did not score 1.00 under strict grading");

  std::string gt;
  for (const auto& e : task.answer) {
    gt += std::to_string(e[0]) + " <- " + std::to_string(e[1]) + ", " +
          std::to_string(e[2]) + "\n";
  }
  GradeReport self = grade_reconstruction(task, gt, oracle);
  c.expect(self.score == 1.0, "ground truth did not score 1.00 under strict grading");

  // Parent swap that keeps all clauses in use: 8/9 in both modes.
  std::string swapped = samples::topology_perfect_answer();
  swapped.replace(swapped.find("15 <- 6, 8"), 10, "15 <- 6, 10");
  ReconstructionGradeOptions lenient;
  lenient.strict_all_used = false;
  double l = grade_reconstruction(task, swapped, oracle, lenient).score;
  double s = grade_reconstruction(task, swapped, oracle).score;
  c.expect(std::abs(l - 8.0 / 9.0) < 1e-9, "lenient corrupted score is not 8/9");
  c.expect(std::abs(s - 8.0 / 9.0) < 1e-9,
           "strict corrupted score is not 8/9 when all clauses stay used");

  // Parent swap that orphans clause 6: strict zeroes, lenient keeps 8/9.
  std::string orphaned = samples::topology_perfect_answer();
  orphaned.replace(orphaned.find("15 <- 6, 8"), 10, "15 <- 3, 4");
  double s0 = grade_reconstruction(task, orphaned, oracle).score;
  double l0 = grade_reconstruction(task, orphaned, oracle, lenient).score;
  c.expect(s0 == 0.0, "strict grading did not zero an incomplete structure");
  c.expect(std::abs(l0 - 8.0 / 9.0) < 1e-9, "lenient incomplete score is not 8/9");
  c.finish(60.0);
}

// 3. Generated selection tasks are oracle-certified minimal.
void criterion_3() {
  Criterion c(3, "selection minimality on generated tasks");
  PipelineConfig cfg = desk_config();
  cfg.kinds = {TaskKind::kSelection};
  fs::path dir = fresh_dir("clauseforge_acc3");
  PipelineResult result = run_pipeline(cfg, dir.string());
  std::vector<EmittedTask> tasks = load_dataset(result.jsonl_path);
  c.expect(tasks.size() >= 30, "fewer than 30 selection tasks were generated");

  InternalOracle oracle(cfg.oracle_limits);
  int checked = 0;
  for (const EmittedTask& emitted : tasks) {
    const auto& task = std::get<SelectionTask>(emitted.task);
    std::vector<Clause> minimal;
    for (int idx : task.answer) minimal.push_back(task.pool[idx - 1]);
    if (oracle.check(minimal, task.theorem).kind != VerdictKind::kEntailed) {
      c.expect(false, emitted.id + ": stored answer does not entail the theorem");
      continue;
    }
    for (std::size_t drop = 0; drop < minimal.size(); ++drop) {
      std::vector<Clause> without;
      for (std::size_t i = 0; i < minimal.size(); ++i) {
        if (i != drop) without.push_back(minimal[i]);
      }
      if (oracle.check(without, task.theorem).kind != VerdictKind::kNotEntailed) {
        c.expect(false, emitted.id + ": answer is not minimal");
      }
    }
    ++checked;
  }
  c.expect(checked >= 30, "fewer than 30 tasks were verified");
  fs::remove_all(dir);
  c.finish(300.0);
}

// 4. Every emitted entailment label is reproducible and definite.
void criterion_4() {
  Criterion c(4, "entailment label fidelity");
  PipelineConfig cfg = desk_config();
  cfg.kinds = {TaskKind::kEntailment};
  cfg.instances_per_config = 3;  // 5 domains x 4 levels x 3 = 60
  fs::path dir = fresh_dir("clauseforge_acc4");
  PipelineResult result = run_pipeline(cfg, dir.string());
  std::vector<EmittedTask> tasks = load_dataset(result.jsonl_path);
  c.expect(tasks.size() >= 50, "fewer than 50 entailment tasks were generated");

  InternalOracle oracle(cfg.oracle_limits);
  int positives = 0;
  for (const EmittedTask& emitted : tasks) {
    const auto& task = std::get<EntailmentTask>(emitted.task);
    Verdict v = oracle.check(task.premises, task.conjecture);
    if (v.kind == VerdictKind::kResourceOut) {
      c.expect(false, emitted.id + ": emitted instance is not definite");
    } else if ((v.kind == VerdictKind::kEntailed) != task.label) {
      c.expect(false, emitted.id + ": stored label is not reproducible");
    }
    if (task.label) ++positives;
  }
  c.expect(positives * 10 >= static_cast<int>(tasks.size()) * 4 &&
               positives * 10 <= static_cast<int>(tasks.size()) * 6,
           "labels are out of the 40-60% balance band");
  fs::remove_all(dir);
  c.finish(300.0);
}

// 5. Generation is byte-deterministic for a fixed config and seed.
void criterion_5() {
  Criterion c(5, "byte-identical replay");
  PipelineConfig cfg = desk_config();
  cfg.domains = {"SET", "TOP"};
  fs::path dir1 = fresh_dir("clauseforge_acc5a");
  fs::path dir2 = fresh_dir("clauseforge_acc5b");
  PipelineResult r1 = run_pipeline(cfg, dir1.string());
  PipelineResult r2 = run_pipeline(cfg, dir2.string());
  c.expect(read_file(r1.jsonl_path) == read_file(r2.jsonl_path),
           "dataset bytes differ between runs");
  c.expect(r1.manifest.dataset_hash == r2.manifest.dataset_hash,
           "manifest hashes differ between runs");
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  c.finish(600.0);
}

// 6. A desk run of 120 instances completes without shortfall, and the
// headline configuration (5 domains x 3 kinds x 4 levels x 50) emits
// exactly 3000 records.
void criterion_6() {
  Criterion c(6, "scale shape and desk-scale run");
  PipelineConfig cfg = desk_config();
  c.expect(cfg.planned_total() == 120, "desk configuration does not plan 120 records");
  fs::path dir = fresh_dir("clauseforge_acc6");
  PipelineResult result = run_pipeline(cfg, dir.string());
  c.expect(result.manifest.total == 120,
           "desk run emitted " + std::to_string(result.manifest.total) + " of 120");
  long long missing = 0;
  for (const auto& [key, n] : result.manifest.shortfall) missing += n;
  c.expect(missing == 0, "desk run reported shortfall");
  fs::remove_all(dir);

  PipelineConfig full = desk_config();
  full.instances_per_config = 50;
  c.expect(full.planned_total() == 3000, "full configuration does not plan 3000 records");
  fs::path full_dir = fresh_dir("clauseforge_acc6_full");
  PipelineResult full_result = run_pipeline(full, full_dir.string());
  c.expect(full_result.manifest.total == 3000,
           "full run emitted " + std::to_string(full_result.manifest.total) + " of 3000");
  long long full_missing = 0;
  for (const auto& [key, n] : full_result.manifest.shortfall) full_missing += n;
  c.expect(full_missing == 0, "full run reported shortfall");
  fs::remove_all(full_dir);
  c.finish(900.0);
}

// 7. Internal and external provers agree on a fixed query suite.
void criterion_7() {
  Criterion c(7, "oracle cross-validation");
  InternalOracle internal(ProverLimits{5.0, 4000, 80});
  ExternalOracle external(mock_config());

  std::vector<std::pair<std::vector<Clause>, Clause>> suite;
  auto add = [&](std::vector<std::string> premises, const std::string& conjecture) {
    std::vector<Clause> ps;
    for (const std::string& p : premises) ps.push_back(parse_clause(p));
    suite.push_back({ps, parse_clause(conjecture)});
  };
  add({"(p(a))"}, "(p(a))");
  add({"(p(a))"}, "(q(a))");
  add({"(p(X1)|q(X1))", "(~p(a))"}, "(q(a))");
  add({"(subset(X1,X1))"}, "(subset(b,b))");
  add({"(member(a,b))", "(~member(X1,X2)|in(X1))"}, "(in(a))");
  // Depth cuts from the bundled domains make realistic small queries.
  for (const char* domain : {"SET", "ALG", "GEO", "FLD", "TOP"}) {
    fs::path path = fs::path(CLAUSEFORGE_DATA_DIR) / (std::string(domain) + ".ax");
    SaturationOutput out =
        saturate_internal(parse_tptp_file(path.string()), ProverLimits{5.0, 120, 25});
    DerivationGraph g = build_graph(out);
    int taken = 0;
    for (NodeId id = 0; id < g.size() && taken < 10; ++id) {
      if (g.is_axiom(id) || clause_weight(g.clause_of(id)) > 20) continue;
      DepthCut cut = premises_at_depth(g, id, 1 + (id % 2));
      if (cut.premises.size() > 6) continue;
      std::vector<Clause> premises;
      for (NodeId p : cut.premises) premises.push_back(g.clause_of(p));
      suite.push_back({premises, g.clause_of(id)});
      ++taken;
    }
  }
  c.expect(suite.size() >= 50, "suite holds fewer than 50 queries");

  int definite = 0;
  for (const auto& [premises, conjecture] : suite) {
    VerdictKind a = internal.check(premises, conjecture).kind;
    VerdictKind b = external.check(premises, conjecture).kind;
    bool contradictory = (a == VerdictKind::kEntailed && b == VerdictKind::kNotEntailed) ||
                         (a == VerdictKind::kNotEntailed && b == VerdictKind::kEntailed);
    if (contradictory) {
      c.expect(false, "contradictory verdicts on " + render_clause(conjecture));
    }
    if (a != VerdictKind::kResourceOut && b != VerdictKind::kResourceOut) ++definite;
  }
  c.expect(definite * 10 >= static_cast<int>(suite.size()) * 9,
           "fewer than 90% of queries reached definite verdicts");
  c.finish(300.0);
}

// 8. Round-trip identity over a corpus of at least 100 clauses.
void criterion_8() {
  Criterion c(8, "parser corpus round trip");
  std::vector<std::string> corpus;
  for (const std::string& rec : samples::set_theory_context_records()) corpus.push_back(rec);
  for (const std::string& rec : samples::fundamental_axiom_records()) corpus.push_back(rec);

  std::vector<Clause> clauses;
  int failures_here = 0;
  for (const std::string& rec : corpus) {
    try {
      clauses.push_back(parse_annotated_clause(rec + ".").clause);
    } catch (const ParseError&) {
      ++failures_here;
    }
  }
  for (const Clause& text_clause : samples::set_theory_premises()) clauses.push_back(text_clause);
  clauses.push_back(samples::set_theory_conclusion());
  for (const std::string& text : samples::selection_pool_texts()) {
    clauses.push_back(parse_clause(text));
  }
  for (const std::string& text : samples::topology_clause_texts()) {
    clauses.push_back(parse_clause(text));
  }
  for (const char* domain : {"SET", "ALG", "GEO", "FLD", "TOP"}) {
    fs::path path = fs::path(CLAUSEFORGE_DATA_DIR) / (std::string(domain) + ".ax");
    try {
      for (const AnnotatedClause& ac : parse_tptp_file(path.string())) {
        clauses.push_back(ac.clause);
      }
    } catch (const ParseError&) {
      ++failures_here;
    }
  }
  c.expect(failures_here == 0, "parse failures over the corpus");
  c.expect(clauses.size() >= 100,
           "corpus holds only " + std::to_string(clauses.size()) + " clauses");
  for (const Clause& clause : clauses) {
    Clause reparsed = parse_clause(render_clause(clause));
    if (!(reparsed == clause)) {
      c.expect(false, "round trip changed " + render_clause(clause));
    }
  }
  c.finish(60.0);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
