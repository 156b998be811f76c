#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clauseforge/external.hpp"
#include "clauseforge/interest.hpp"
#include "clauseforge/task.hpp"

namespace clauseforge {

inline const char* kToolName = "clauseforge";
inline const char* kToolVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

// Flat INI-style file: `[section.subsection]` headers, `key = value`
// lines, `#`/`;`/`%` comments.
class IniFile {
 public:
  static IniFile load(const std::string& path);
  static IniFile parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  std::string require(const std::string& section, const std::string& key) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& key,
                                    const std::string& fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct LevelTable {
  std::vector<int> d;  // indexed by level-1
  std::vector<int> k;  // empty when the task kind has no k
};

struct PipelineConfig {
  std::uint64_t seed = 42;
  std::vector<std::string> domains;
  std::map<std::string, std::string> domain_files;  // domain -> axiom file
  std::vector<TaskKind> kinds;
  std::vector<int> levels;
  int instances_per_config = 2;
  std::string axiom_root = "data";
  std::string tptp_root;  // include resolution; defaults to axiom_root
  int retry_budget = 25;
  int workers = 1;
  bool dump_scores = false;

  RaterConfig rater;
  ProverLimits oracle_limits{5.0, 4000, 80};
  ProverLimits saturation_limits{10.0, 400, 40};
  std::string prover_mode = "internal";  // or "external"
  ExternalProverConfig external;

  std::map<TaskKind, LevelTable> level_tables;

  static PipelineConfig load(const std::string& path);
  static PipelineConfig from_ini(const IniFile& ini);

  DifficultySpec level_spec(TaskKind kind, int level) const;
  long long planned_total() const;
  std::string axiom_path(const std::string& domain) const;
  void validate() const;
};

}  // namespace clauseforge
