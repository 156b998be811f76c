#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clauseforge/external.hpp"
#include "clauseforge/grade.hpp"
#include "clauseforge/pipeline.hpp"

using namespace clauseforge;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Two-domain miniature of the desk configuration.
PipelineConfig small_config() {
  IniFile ini = IniFile::parse(
      "[pipeline]\n"
      "seed = 7\n"
      "domains = SET, GEO\n"
      "tasks = entailment, selection, reconstruction\n"
      "levels = 1, 2\n"
      "instances_per_config = 2\n"
      "axiom_root = " CLAUSEFORGE_DATA_DIR "\n"
      "retry_budget = 25\n"
      "[prover.saturation]\n"
      "timeout_s = 10\n"
      "max_clauses = 250\n"
      "max_weight = 30\n"
      "[prover.oracle]\n"
      "timeout_s = 5\n"
      "max_clauses = 3000\n"
      "max_weight = 60\n");
  return PipelineConfig::from_ini(ini);
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config defaults follow the standard difficulty matrix") {
  PipelineConfig cfg = PipelineConfig::from_ini(IniFile::parse(""));
  CHECK(cfg.domains == std::vector<std::string>{"ALG", "FLD", "GEO", "SET", "TOP"});
  CHECK(cfg.levels == std::vector<int>{1, 2, 3, 4});
  DifficultySpec e4 = cfg.level_spec(TaskKind::kEntailment, 4);
  CHECK(e4.d == 4);
  CHECK(e4.k == 6);
  DifficultySpec s3 = cfg.level_spec(TaskKind::kSelection, 3);
  CHECK(s3.d == 3);
  CHECK(s3.k == 6);
  DifficultySpec r2 = cfg.level_spec(TaskKind::kReconstruction, 2);
  CHECK(r2.d == 2);
  CHECK(r2.k == 0);
  // The headline shape: 5 domains x 3 kinds x 4 levels x 50 instances.
  cfg.instances_per_config = 50;
  CHECK(cfg.planned_total() == 3000);
}

TEST_CASE("config validation rejects broken tables") {
  CHECK_THROWS_AS(PipelineConfig::from_ini(IniFile::parse("[pipeline]\nlevels = 9\n")),
                  ConfigError);
  CHECK_THROWS_AS(
      PipelineConfig::from_ini(IniFile::parse("[pipeline]\nworkers = 0\n")),
      ConfigError);
  CHECK_THROWS_AS(
      PipelineConfig::from_ini(IniFile::parse("[rater]\nw_complexity = 0.9\n")),
      ConfigError);
}

TEST_CASE("task records survive a JSON round trip") {
  PipelineConfig cfg = small_config();
  cfg.kinds = {TaskKind::kSelection};
  cfg.levels = {1};
  cfg.domains = {"SET"};
  cfg.instances_per_config = 1;
  fs::path dir = fresh_dir("clauseforge_roundtrip");
  PipelineResult result = run_pipeline(cfg, dir.string());
  REQUIRE(result.manifest.total == 1);

  std::ifstream in(result.jsonl_path);
  std::string line;
  REQUIRE(std::getline(in, line));
  EmittedTask back = task_record_from_json(line);
  CHECK(task_record_json(back) == line);
  CHECK(kind_of(back.task) == TaskKind::kSelection);
  fs::remove_all(dir);
}

TEST_CASE("two runs with one seed are byte-identical") {
  PipelineConfig cfg = small_config();
  fs::path dir1 = fresh_dir("clauseforge_det1");
  fs::path dir2 = fresh_dir("clauseforge_det2");
  PipelineResult r1 = run_pipeline(cfg, dir1.string());
  PipelineResult r2 = run_pipeline(cfg, dir2.string());
  CHECK(read_file(r1.jsonl_path) == read_file(r2.jsonl_path));
  CHECK(r1.manifest.dataset_hash == r2.manifest.dataset_hash);
  CHECK(r1.manifest.to_json_text(false) == r2.manifest.to_json_text(false));

  // A different seed must change the dataset.
  cfg.seed = 8;
  fs::path dir3 = fresh_dir("clauseforge_det3");
  PipelineResult r3 = run_pipeline(cfg, dir3.string());
  CHECK(read_file(r3.jsonl_path) != read_file(r1.jsonl_path));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  fs::remove_all(dir3);
}

TEST_CASE("worker pools do not change the output") {
  PipelineConfig cfg = small_config();
  cfg.kinds = {TaskKind::kEntailment, TaskKind::kReconstruction};
  fs::path dir1 = fresh_dir("clauseforge_w1");
  fs::path dir4 = fresh_dir("clauseforge_w4");
  PipelineResult serial = run_pipeline(cfg, dir1.string());
  cfg.workers = 4;
  PipelineResult parallel = run_pipeline(cfg, dir4.string());
  CHECK(read_file(serial.jsonl_path) == read_file(parallel.jsonl_path));
  fs::remove_all(dir1);
  fs::remove_all(dir4);
}

TEST_CASE("manifest counts match the emitted records") {
  PipelineConfig cfg = small_config();
  fs::path dir = fresh_dir("clauseforge_counts");
  PipelineResult result = run_pipeline(cfg, dir.string());

  std::map<std::string, int> seen;
  std::ifstream in(result.jsonl_path);
  std::string line;
  long long total = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    ++seen[rec.at("domain").get<std::string>() + "." +
           rec.at("task_type").get<std::string>() + ".L" +
           std::to_string(rec.at("level").get<int>())];
    ++total;
  }
  CHECK(seen == result.manifest.counts);
  CHECK(total == result.manifest.total);
  long long missing = 0;
  for (const auto& [key, n] : result.manifest.shortfall) missing += n;
  CHECK(total + missing == cfg.planned_total());

  // The manifest on disk parses and repeats the hash.
  json manifest = json::parse(read_file(result.manifest_path));
  CHECK(manifest.at("dataset_hash").get<std::string>() == result.manifest.dataset_hash);
  CHECK(manifest.at("seed").get<std::uint64_t>() == cfg.seed);
  fs::remove_all(dir);
}

TEST_CASE("emitted entailment labels are reproducible and balanced") {
  PipelineConfig cfg = small_config();
  cfg.kinds = {TaskKind::kEntailment};
  cfg.levels = {1, 2};
  cfg.domains = {"SET", "GEO", "ALG"};
  cfg.instances_per_config = 5;  // 30 instances
  fs::path dir = fresh_dir("clauseforge_labels");
  PipelineResult result = run_pipeline(cfg, dir.string());

  InternalOracle oracle(cfg.oracle_limits);
  std::ifstream in(result.jsonl_path);
  std::string line;
  int total = 0, positive = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EmittedTask emitted = task_record_from_json(line);
    const auto& task = std::get<EntailmentTask>(emitted.task);
    Verdict v = oracle.check(task.premises, task.conjecture);
    CHECK(v.kind != VerdictKind::kResourceOut);
    CHECK((v.kind == VerdictKind::kEntailed) == task.label);
    ++total;
    if (task.label) ++positive;
  }
  CHECK(total >= 25);
  CHECK(positive >= total * 2 / 5);
  CHECK(positive <= total - total * 2 / 5);
  fs::remove_all(dir);
}

TEST_CASE("generated reconstruction answers grade to one") {
  PipelineConfig cfg = small_config();
  cfg.kinds = {TaskKind::kReconstruction};
  fs::path dir = fresh_dir("clauseforge_selfgrade");
  PipelineResult result = run_pipeline(cfg, dir.string());
  REQUIRE(result.manifest.total > 0);

  InternalOracle oracle(cfg.oracle_limits);
  std::ifstream in(result.jsonl_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    EmittedTask emitted = task_record_from_json(line);
    GradeReport report = grade(emitted.task, render_answer(emitted.task), oracle);
    CHECK(report.score == doctest::Approx(1.0));
  }
  fs::remove_all(dir);
}

TEST_CASE("emitting zero tasks writes an empty dataset and manifest") {
  fs::path dir = fresh_dir("clauseforge_empty");
  std::string jsonl = (dir / "dataset.jsonl").string();
  DatasetManifest manifest = emit_jsonl({}, jsonl, 3, {"SET"});
  CHECK(read_file(jsonl).empty());
  CHECK(manifest.total == 0);
  CHECK(manifest.counts.empty());
  json parsed = json::parse(read_file((dir / "manifest.json").string()));
  CHECK(parsed.at("total").get<int>() == 0);
  fs::remove_all(dir);
}

TEST_CASE("missing axiom files surface as config errors") {
  PipelineConfig cfg = small_config();
  cfg.domains = {"NOPE"};
  cfg.domain_files["NOPE"] = "NOPE.ax";
  fs::path dir = fresh_dir("clauseforge_missing");
  CHECK_THROWS(run_pipeline(cfg, dir.string()));
  fs::remove_all(dir);
}

TEST_CASE("the command line binary generates, inspects, and grades") {
  fs::path dir = fresh_dir("clauseforge_cli");
  fs::path cfg_path = dir / "cli.cfg";
  {
    std::ofstream cfg(cfg_path.string());
    cfg << "[pipeline]\n"
        << "seed = 11\n"
        << "domains = SET\n"
        << "tasks = entailment, selection, reconstruction\n"
        << "levels = 1\n"
        << "instances_per_config = 2\n"
        << "axiom_root = " << CLAUSEFORGE_DATA_DIR << "\n"
        << "[prover.saturation]\n"
        << "max_clauses = 250\n"
        << "max_weight = 30\n";
  }
  ProcessResult gen = run_process(
      {CLAUSEFORGE_BIN, "generate", "--config", cfg_path.string(), "--out",
       (dir / "out").string()},
      300.0);
  CAPTURE(gen.output);
  REQUIRE(gen.exit_code == 0);

  // Echo the stored answers back as a model answer file.
  fs::path answers = dir / "answers.jsonl";
  {
    std::ifstream in((dir / "out" / "dataset.jsonl").string());
    std::ofstream out(answers.string());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json rec = json::parse(line);
      json row;
      row["id"] = rec.at("id");
      row["answer"] = rec.at("answer");
      out << row.dump() << "\n";
    }
  }
  ProcessResult graded = run_process(
      {CLAUSEFORGE_BIN, "grade", "--tasks", (dir / "out" / "dataset.jsonl").string(),
       "--answers", answers.string(), "--out", (dir / "report.jsonl").string()},
      300.0);
  CAPTURE(graded.output);
  REQUIRE(graded.exit_code == 0);
  CHECK(graded.output.find("mean score 1") != std::string::npos);

  ProcessResult inspected = run_process(
      {CLAUSEFORGE_BIN, "inspect", "--tasks", (dir / "out" / "dataset.jsonl").string()},
      60.0);
  REQUIRE(inspected.exit_code == 0);
  CHECK(inspected.output.find("SET.entailment.L1") != std::string::npos);
  fs::remove_all(dir);
}
