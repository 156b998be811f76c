#include "clauseforge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace clauseforge {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

IniFile IniFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

IniFile IniFile::parse(const std::string& text) {
  IniFile ini;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t comment = line.find_first_of("#;%");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("bad section header at line " + std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      ini.sections_[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    }
    ini.sections_[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return ini;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

std::string IniFile::require(const std::string& section, const std::string& key) const {
  if (!has(section, key)) {
    throw ConfigError("missing config key [" + section + "] " + key);
  }
  return get(section, key, "");
}

long IniFile::get_int(const std::string& section, const std::string& key,
                      long fallback) const {
  if (!has(section, key)) return fallback;
  try {
    return std::stol(get(section, key, ""));
  } catch (const std::exception&) {
    throw ConfigError("non-integer value for [" + section + "] " + key);
  }
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
  if (!has(section, key)) return fallback;
  try {
    return std::stod(get(section, key, ""));
  } catch (const std::exception&) {
    throw ConfigError("non-numeric value for [" + section + "] " + key);
  }
}

bool IniFile::get_bool(const std::string& section, const std::string& key,
                       bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string v = get(section, key, "");
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("non-boolean value for [" + section + "] " + key);
}

std::vector<std::string> IniFile::get_list(const std::string& section,
                                           const std::string& key,
                                           const std::string& fallback) const {
  std::string value = get(section, key, fallback);
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

namespace {

std::vector<int> int_list(const IniFile& ini, const std::string& section,
                          const std::string& key, const std::string& fallback) {
  std::vector<int> out;
  for (const std::string& s : ini.get_list(section, key, fallback)) {
    try {
      out.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw ConfigError("non-integer list entry for [" + section + "] " + key);
    }
  }
  return out;
}

ProverLimits limits_from(const IniFile& ini, const std::string& section,
                         ProverLimits defaults) {
  ProverLimits limits = defaults;
  limits.timeout_s = ini.get_double(section, "timeout_s", defaults.timeout_s);
  limits.max_clauses =
      static_cast<int>(ini.get_int(section, "max_clauses", defaults.max_clauses));
  limits.max_weight =
      static_cast<int>(ini.get_int(section, "max_weight", defaults.max_weight));
  return limits;
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  return from_ini(IniFile::load(path));
}

PipelineConfig PipelineConfig::from_ini(const IniFile& ini) {
  PipelineConfig cfg;
  cfg.seed = static_cast<std::uint64_t>(ini.get_int("pipeline", "seed", 42));
  cfg.domains = ini.get_list("pipeline", "domains", "ALG, FLD, GEO, SET, TOP");
  for (const std::string& d : cfg.domains) {
    cfg.domain_files[d] = ini.get("domains." + d, "file", d + ".ax");
  }
  for (const std::string& kind :
       ini.get_list("pipeline", "tasks", "entailment, selection, reconstruction")) {
    cfg.kinds.push_back(task_kind_from_string(kind));
  }
  cfg.levels = int_list(ini, "pipeline", "levels", "1, 2, 3, 4");
  cfg.instances_per_config =
      static_cast<int>(ini.get_int("pipeline", "instances_per_config", 2));
  cfg.axiom_root = ini.get("pipeline", "axiom_root", "data");
  cfg.tptp_root = ini.get("pipeline", "tptp_root", "");
  if (cfg.tptp_root.empty()) {
    const char* env = std::getenv("TPTP_ROOT");
    cfg.tptp_root = env ? env : cfg.axiom_root;
  }
  cfg.retry_budget = static_cast<int>(ini.get_int("pipeline", "retry_budget", 25));
  cfg.workers = static_cast<int>(ini.get_int("pipeline", "workers", 1));
  cfg.dump_scores = ini.get_bool("pipeline", "dump_scores", false);

  cfg.rater.weight_cap = static_cast<int>(ini.get_int("rater", "weight_cap", 60));
  cfg.rater.interest_threshold = ini.get_double("rater", "interest_threshold", 0.5);
  cfg.rater.w_complexity = ini.get_double("rater", "w_complexity", 1.0 / 3.0);
  cfg.rater.w_surprise = ini.get_double("rater", "w_surprise", 1.0 / 3.0);
  cfg.rater.w_usefulness = ini.get_double("rater", "w_usefulness", 1.0 / 3.0);
  cfg.rater.top_n = static_cast<int>(ini.get_int("rater", "top_n", 40));

  cfg.oracle_limits = limits_from(ini, "prover.oracle", cfg.oracle_limits);
  cfg.saturation_limits = limits_from(ini, "prover.saturation", cfg.saturation_limits);
  cfg.prover_mode = ini.get("prover", "mode", "internal");
  cfg.external.executable = ini.get("prover.external", "executable", "");
  cfg.external.saturation_args =
      ini.get("prover.external", "saturation_args", cfg.external.saturation_args);
  cfg.external.entailment_args =
      ini.get("prover.external", "entailment_args", cfg.external.entailment_args);
  cfg.external.dialect = ini.get("prover.external", "dialect", "tstp");
  cfg.external.limits = limits_from(ini, "prover.external", cfg.oracle_limits);

  auto table = [&](TaskKind kind, const std::string& dflt_d, const std::string& dflt_k) {
    LevelTable t;
    std::string section = std::string("levels.") + to_string(kind);
    t.d = int_list(ini, section, "d", dflt_d);
    if (!dflt_k.empty() || ini.has(section, "k")) {
      t.k = int_list(ini, section, "k", dflt_k);
    }
    cfg.level_tables[kind] = std::move(t);
  };
  table(TaskKind::kEntailment, "1, 2, 3, 4", "2, 3, 4, 6");
  table(TaskKind::kSelection, "1, 2, 3, 4", "2, 4, 6, 8");
  table(TaskKind::kReconstruction, "1, 2, 3, 4", "");

  cfg.validate();
  return cfg;
}

DifficultySpec PipelineConfig::level_spec(TaskKind kind, int level) const {
  const LevelTable& table = level_tables.at(kind);
  if (level < 1 || level > static_cast<int>(table.d.size())) {
    throw ConfigError("level " + std::to_string(level) + " outside the level table");
  }
  DifficultySpec spec;
  spec.kind = kind;
  spec.level = level;
  spec.d = table.d[level - 1];
  spec.k = table.k.empty() ? 0 : table.k[level - 1];
  return spec;
}

long long PipelineConfig::planned_total() const {
  return static_cast<long long>(domains.size()) * static_cast<long long>(kinds.size()) *
         static_cast<long long>(levels.size()) * instances_per_config;
}

std::string PipelineConfig::axiom_path(const std::string& domain) const {
  namespace fs = std::filesystem;
  auto it = domain_files.find(domain);
  std::string file = it == domain_files.end() ? domain + ".ax" : it->second;
  fs::path p(file);
  if (p.is_absolute()) return p.string();
  return (fs::path(axiom_root) / p).string();
}

void PipelineConfig::validate() const {
  if (domains.empty()) throw ConfigError("no domains configured");
  if (kinds.empty()) throw ConfigError("no task kinds configured");
  if (levels.empty()) throw ConfigError("no levels configured");
  if (instances_per_config <= 0) throw ConfigError("instances_per_config must be positive");
  if (retry_budget <= 0) throw ConfigError("retry_budget must be positive");
  if (workers <= 0) throw ConfigError("workers must be positive");
  if (prover_mode != "internal" && prover_mode != "external") {
    throw ConfigError("prover mode must be 'internal' or 'external'");
  }
  try {
    rater.validate();
    oracle_limits.validate();
    saturation_limits.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (TaskKind kind : kinds) {
    const LevelTable& table = level_tables.at(kind);
    for (int level : levels) {
      if (level < 1 || level > static_cast<int>(table.d.size()) ||
          (!table.k.empty() && level > static_cast<int>(table.k.size()))) {
        throw ConfigError(std::string("level table for ") + to_string(kind) +
                          " does not cover level " + std::to_string(level));
      }
    }
  }
}

}  // namespace clauseforge
