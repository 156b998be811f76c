#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "clauseforge/config.hpp"
#include "clauseforge/grade.hpp"
#include "clauseforge/pipeline.hpp"

using namespace clauseforge;
using nlohmann::json;

namespace {

int cmd_generate(const std::string& config_path, const std::string& out_dir,
                 long long seed_override, const std::string& prover_override,
                 int workers_override, const std::string& axiom_root_override,
                 const std::string& tptp_root_override) {
  PipelineConfig config = PipelineConfig::load(config_path);
  if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
  if (!prover_override.empty()) config.prover_mode = prover_override;
  if (workers_override > 0) config.workers = workers_override;
  if (!axiom_root_override.empty()) config.axiom_root = axiom_root_override;
  if (!tptp_root_override.empty()) config.tptp_root = tptp_root_override;

  PipelineResult result = run_pipeline(config, out_dir);
  std::cout << "wrote " << result.manifest.total << " tasks to " << result.jsonl_path
            << "\n";
  long long missing = 0;
  for (const auto& [key, n] : result.manifest.shortfall) missing += n;
  if (missing > 0) {
    std::cout << "shortfall: " << missing << " instances (see manifest)\n";
  }
  std::cout << "manifest: " << result.manifest_path << "\n";
  return 0;
}

std::map<std::string, EmittedTask> load_tasks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tasks file '" + path + "'");
  std::map<std::string, EmittedTask> tasks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EmittedTask task = task_record_from_json(line);
    tasks.emplace(task.id, std::move(task));
  }
  return tasks;
}

int cmd_grade(const std::string& tasks_path, const std::string& answers_path,
              const std::string& out_path, bool lenient, double timeout_s,
              int max_clauses, int max_weight) {
  std::map<std::string, EmittedTask> tasks = load_tasks(tasks_path);
  std::ifstream answers(answers_path);
  if (!answers) {
    throw std::runtime_error("cannot open answers file '" + answers_path + "'");
  }
  InternalOracle oracle(ProverLimits{timeout_s, max_clauses, max_weight});
  ReconstructionGradeOptions options;
  options.strict_all_used = !lenient;

  std::ofstream out;
  if (!out_path.empty()) {
    out.open(out_path);
    if (!out) throw std::runtime_error("cannot write report '" + out_path + "'");
  }
  std::map<std::string, std::pair<double, int>> by_kind;
  std::string line;
  int graded = 0, missing = 0;
  while (std::getline(answers, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    std::string id = rec.at("id").get<std::string>();
    auto it = tasks.find(id);
    if (it == tasks.end()) {
      ++missing;
      continue;
    }
    GradeReport report =
        grade(it->second.task, rec.at("answer").get<std::string>(), oracle, options);
    ++graded;
    const char* kind = to_string(kind_of(it->second.task));
    auto& agg = by_kind[kind];
    agg.first += report.score;
    agg.second += 1;
    if (out.is_open()) {
      json row;
      row["id"] = id;
      row["task_type"] = kind;
      row["score"] = report.score;
      row["structural_ok"] = report.structural_ok;
      row["flagged"] = report.flagged;
      if (report.failure_reason) row["reason"] = *report.failure_reason;
      if (!report.step_verdicts.empty()) {
        json steps = json::array();
        for (const StepVerdict& sv : report.step_verdicts) {
          steps.push_back({{"step", {sv.triple[0], sv.triple[1], sv.triple[2]}},
                           {"verdict", to_string(sv.verdict)}});
        }
        row["steps"] = steps;
      }
      out << row.dump() << "\n";
    }
  }
  std::cout << "graded " << graded << " answers";
  if (missing > 0) std::cout << " (" << missing << " unknown ids skipped)";
  std::cout << "\n";
  for (const auto& [kind, agg] : by_kind) {
    std::cout << "  " << kind << ": mean score " << (agg.first / agg.second) << " over "
              << agg.second << "\n";
  }
  return 0;
}

int cmd_inspect(const std::string& tasks_path, const std::string& id) {
  std::map<std::string, EmittedTask> tasks = load_tasks(tasks_path);
  if (!id.empty()) {
    auto it = tasks.find(id);
    if (it == tasks.end()) {
      std::cerr << "no task with id '" << id << "'\n";
      return 1;
    }
    std::cout << render_prompt(it->second.task) << "\n--- answer ---\n"
              << render_answer(it->second.task) << "\n";
    return 0;
  }
  std::map<std::string, int> counts;
  for (const auto& [task_id, task] : tasks) {
    const DifficultySpec& spec = spec_of(task.task);
    std::string domain = std::visit([](const auto& t) { return t.domain; }, task.task);
    ++counts[domain + "." + to_string(spec.kind) + ".L" + std::to_string(spec.level)];
  }
  std::cout << tasks.size() << " tasks\n";
  for (const auto& [key, n] : counts) std::cout << "  " << key << ": " << n << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation-based generator and grader of CNF reasoning tasks"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", prover_override, axiom_root, tptp_root;
  long long seed_override = -1;
  int workers = 0;
  auto* generate = app.add_subcommand("generate", "Generate a task dataset");
  generate->add_option("--config", config_path, "Pipeline config file")->required();
  generate->add_option("--out", out_dir, "Output directory");
  generate->add_option("--seed", seed_override, "Override the config seed");
  generate->add_option("--prover", prover_override, "internal or external");
  generate->add_option("--workers", workers, "Worker thread count");
  generate->add_option("--axiom-root", axiom_root, "Directory of domain axiom files");
  generate->add_option("--tptp-root", tptp_root, "Root for include(...) resolution");

  std::string tasks_path, answers_path, report_path;
  bool lenient = false;
  double timeout_s = 5.0;
  int max_clauses = 4000, max_weight = 80;
  auto* grade_cmd = app.add_subcommand("grade", "Grade model answers against a dataset");
  grade_cmd->add_option("--tasks", tasks_path, "Dataset JSONL")->required();
  grade_cmd->add_option("--answers", answers_path, "Answers JSONL with {id, answer}")
      ->required();
  grade_cmd->add_option("--out", report_path, "Per-answer report JSONL");
  grade_cmd->add_flag("--lenient", lenient,
                      "Drop the all-clauses-used requirement for reconstruction");
  grade_cmd->add_option("--timeout-s", timeout_s, "Oracle timeout per step");
  grade_cmd->add_option("--max-clauses", max_clauses, "Oracle clause limit");
  grade_cmd->add_option("--max-weight", max_weight, "Oracle clause weight limit");

  std::string inspect_tasks, inspect_id;
  auto* inspect = app.add_subcommand("inspect", "Print a task or dataset summary");
  inspect->add_option("--tasks", inspect_tasks, "Dataset JSONL")->required();
  inspect->add_option("--id", inspect_id, "Task id to print");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(config_path, out_dir, seed_override, prover_override, workers,
                          axiom_root, tptp_root);
    }
    if (grade_cmd->parsed()) {
      return cmd_grade(tasks_path, answers_path, report_path, lenient, timeout_s,
                       max_clauses, max_weight);
    }
    if (inspect->parsed()) return cmd_inspect(inspect_tasks, inspect_id);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
