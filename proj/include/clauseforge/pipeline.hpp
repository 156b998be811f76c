#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clauseforge/config.hpp"
#include "clauseforge/task.hpp"

namespace clauseforge {

struct EmittedTask {
  std::string id;
  TaskInstance task;
};

struct DatasetManifest {
  std::uint64_t seed = 0;
  std::string tool_name;
  std::string tool_version;
  std::vector<std::string> domains;
  std::map<std::string, int> counts;     // "<domain>.<kind>.L<level>" -> emitted
  std::map<std::string, int> shortfall;  // same keys, instances not produced
  long long total = 0;
  std::string dataset_hash;  // fnv1a64 over the JSONL bytes
  std::string created_utc;

  std::string to_json_text(bool include_timestamp = true) const;
};

// One record per line: {id, domain, task_type, level, d, k, prompt,
// answer, theorem_name, seed} plus a payload object that makes the record
// self-contained for grading. Writes `manifest.json` next to the dataset.
DatasetManifest emit_jsonl(const std::vector<EmittedTask>& tasks,
                           const std::string& jsonl_path, std::uint64_t seed,
                           const std::vector<std::string>& domains,
                           const std::map<std::string, int>& shortfall = {});

// Round trip for dataset records.
std::string task_record_json(const EmittedTask& task);
EmittedTask task_record_from_json(const std::string& line);

struct PipelineResult {
  DatasetManifest manifest;
  std::string jsonl_path;
  std::string manifest_path;
};

// Per domain: saturate -> build graph -> rate -> rank -> generate each
// configured (kind, level) block -> emit dataset and manifest under
// `out_dir`.
PipelineResult run_pipeline(const PipelineConfig& config, const std::string& out_dir);

}  // namespace clauseforge
