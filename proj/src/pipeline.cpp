#include "clauseforge/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "clauseforge/graph.hpp"
#include "clauseforge/interest.hpp"
#include "clauseforge/parse.hpp"
#include "clauseforge/pipeline.hpp"
#include "clauseforge/rng.hpp"

namespace clauseforge {

using nlohmann::json;

namespace {

json clause_list_json(const std::vector<Clause>& clauses) {
  json out = json::array();
  for (const Clause& c : clauses) out.push_back(render_clause(c));
  return out;
}

std::vector<Clause> clause_list_from_json(const json& arr) {
  std::vector<Clause> out;
  for (const auto& item : arr) out.push_back(parse_clause(item.get<std::string>()));
  return out;
}

json context_json(const std::vector<AnnotatedClause>& context) {
  json out = json::array();
  for (const AnnotatedClause& ac : context) {
    out.push_back({{"name", ac.name}, {"clause", render_clause(ac.clause)}});
  }
  return out;
}

std::vector<AnnotatedClause> context_from_json(const json& arr, const std::string& domain) {
  std::vector<AnnotatedClause> out;
  for (const auto& item : arr) {
    AnnotatedClause ac;
    ac.name = item.at("name").get<std::string>();
    ac.role = Role::kAxiom;
    ac.clause = parse_clause(item.at("clause").get<std::string>());
    ac.source_domain = domain;
    out.push_back(std::move(ac));
  }
  return out;
}

json payload_json(const TaskInstance& task) {
  json payload;
  if (const auto* e = std::get_if<EntailmentTask>(&task)) {
    payload["context"] = context_json(e->context);
    payload["premises"] = clause_list_json(e->premises);
    payload["conjecture"] = render_clause(e->conjecture);
    payload["label"] = e->label;
  } else if (const auto* s = std::get_if<SelectionTask>(&task)) {
    payload["context"] = context_json(s->context);
    payload["theorem"] = render_clause(s->theorem);
    payload["pool"] = clause_list_json(s->pool);
    payload["answer_indices"] = s->answer;
  } else {
    const auto& r = std::get<ReconstructionTask>(task);
    payload["clauses"] = clause_list_json(r.clauses);
    json edges = json::array();
    for (const auto& t : r.answer) edges.push_back({t[0], t[1], t[2]});
    payload["answer_edges"] = edges;
    payload["theorem_index"] = r.theorem_index;
  }
  return payload;
}

}  // namespace

std::string task_record_json(const EmittedTask& emitted) {
  const TaskInstance& task = emitted.task;
  const DifficultySpec& spec = spec_of(task);
  json record;
  record["id"] = emitted.id;
  std::visit(
      [&](const auto& t) {
        record["domain"] = t.domain;
        record["seed"] = t.seed;
        record["theorem_name"] = t.theorem_name;
      },
      task);
  record["task_type"] = to_string(spec.kind);
  record["level"] = spec.level;
  record["d"] = spec.d;
  record["k"] = spec.k;
  record["prompt"] = render_prompt(task);
  record["answer"] = render_answer(task);
  record["payload"] = payload_json(task);
  return record.dump();
}

EmittedTask task_record_from_json(const std::string& line) {
  json record = json::parse(line);
  DifficultySpec spec;
  spec.kind = task_kind_from_string(record.at("task_type").get<std::string>());
  spec.level = record.at("level").get<int>();
  spec.d = record.at("d").get<int>();
  spec.k = record.at("k").get<int>();
  std::string domain = record.at("domain").get<std::string>();
  std::uint64_t seed = record.at("seed").get<std::uint64_t>();
  std::string theorem_name = record.at("theorem_name").get<std::string>();
  const json& payload = record.at("payload");

  EmittedTask out;
  out.id = record.at("id").get<std::string>();
  if (spec.kind == TaskKind::kEntailment) {
    EntailmentTask t;
    t.context = context_from_json(payload.at("context"), domain);
    t.premises = clause_list_from_json(payload.at("premises"));
    t.conjecture = parse_clause(payload.at("conjecture").get<std::string>());
    t.label = payload.at("label").get<bool>();
    t.spec = spec;
    t.domain = domain;
    t.seed = seed;
    t.theorem_name = theorem_name;
    out.task = std::move(t);
  } else if (spec.kind == TaskKind::kSelection) {
    SelectionTask t;
    t.context = context_from_json(payload.at("context"), domain);
    t.theorem = parse_clause(payload.at("theorem").get<std::string>());
    t.pool = clause_list_from_json(payload.at("pool"));
    t.answer = payload.at("answer_indices").get<std::vector<int>>();
    t.spec = spec;
    t.domain = domain;
    t.seed = seed;
    t.theorem_name = theorem_name;
    out.task = std::move(t);
  } else {
    ReconstructionTask t;
    t.clauses = clause_list_from_json(payload.at("clauses"));
    for (const auto& e : payload.at("answer_edges")) {
      t.answer.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    }
    t.theorem_index = payload.at("theorem_index").get<int>();
    t.spec = spec;
    t.domain = domain;
    t.seed = seed;
    t.theorem_name = theorem_name;
    out.task = std::move(t);
  }
  return out;
}

std::string DatasetManifest::to_json_text(bool include_timestamp) const {
  json m;
  m["seed"] = seed;
  m["tool"] = {{"name", tool_name}, {"version", tool_version}};
  m["domains"] = domains;
  m["counts"] = counts;
  m["shortfall"] = shortfall;
  m["total"] = total;
  m["dataset_hash"] = dataset_hash;
  if (include_timestamp) m["created_utc"] = created_utc;
  return m.dump(2) + "\n";
}

namespace {

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string config_key(const TaskInstance& task) {
  const DifficultySpec& spec = spec_of(task);
  std::string domain = std::visit([](const auto& t) { return t.domain; }, task);
  return domain + "." + to_string(spec.kind) + ".L" + std::to_string(spec.level);
}

}  // namespace

DatasetManifest emit_jsonl(const std::vector<EmittedTask>& tasks,
                           const std::string& jsonl_path, std::uint64_t seed,
                           const std::vector<std::string>& domains,
                           const std::map<std::string, int>& shortfall) {
  std::string buffer;
  DatasetManifest manifest;
  manifest.seed = seed;
  manifest.tool_name = kToolName;
  manifest.tool_version = kToolVersion;
  manifest.domains = domains;
  manifest.shortfall = shortfall;
  for (const EmittedTask& t : tasks) {
    buffer += task_record_json(t);
    buffer += '\n';
    ++manifest.counts[config_key(t.task)];
    ++manifest.total;
  }
  char hash[32];
  std::snprintf(hash, sizeof(hash), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(buffer)));
  manifest.dataset_hash = hash;
  manifest.created_utc = utc_now();

  std::ofstream out(jsonl_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset file '" + jsonl_path + "'");
  out << buffer;
  out.close();
  if (!out) throw std::runtime_error("write failed for '" + jsonl_path + "'");

  namespace fs = std::filesystem;
  fs::path manifest_path = fs::path(jsonl_path).parent_path() / "manifest.json";
  std::ofstream mout(manifest_path, std::ios::binary);
  if (!mout) {
    throw std::runtime_error("cannot write manifest '" + manifest_path.string() + "'");
  }
  mout << manifest.to_json_text();
  return manifest;
}

namespace {

// Everything needed to generate instances for one domain.
struct DomainContext {
  std::string domain;
  DerivationGraph graph;
  std::vector<NodeId> ranked_top;
  std::vector<NodeId> ranked_full;
  std::vector<int> depths;  // node_depth per node
};

DomainContext prepare_domain(const PipelineConfig& config, const std::string& domain,
                             const std::string& out_dir) {
  DomainContext ctx;
  ctx.domain = domain;
  std::string path = config.axiom_path(domain);
  SaturationOutput saturation;
  if (config.prover_mode == "external") {
    saturation = run_external_saturation(path, config.external);
  } else {
    std::vector<AnnotatedClause> axioms = parse_tptp_file(path, config.tptp_root);
    if (axioms.empty()) throw ConfigError("axiom file '" + path + "' has no clauses");
    saturation = saturate_internal(axioms, config.saturation_limits);
  }
  ctx.graph = build_graph(saturation);
  for (AnnotatedClause& node : ctx.graph.nodes) node.source_domain = domain;

  std::vector<InterestScore> scores = score_graph(ctx.graph, config.rater);
  ctx.ranked_top = rank_theorems(ctx.graph, scores, config.rater);
  RaterConfig all = config.rater;
  all.top_n = static_cast<int>(ctx.graph.size());
  ctx.ranked_full = rank_theorems(ctx.graph, scores, all);
  ctx.depths.resize(ctx.graph.size());
  for (NodeId id = 0; id < ctx.graph.size(); ++id) {
    ctx.depths[id] = node_depth(ctx.graph, id);
  }
  if (config.dump_scores) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out_dir) / "scores");
    std::ofstream t((fs::path(out_dir) / "scores" / (domain + ".tsv")).string());
    write_score_table(ctx.graph, scores, t);
  }
  return ctx;
}

std::vector<NodeId> eligible_theorems(const DomainContext& ctx, int d) {
  std::vector<NodeId> out;
  for (NodeId id : ctx.ranked_top) {
    if (ctx.depths[id] >= d) out.push_back(id);
  }
  if (!out.empty()) return out;
  for (NodeId id : ctx.ranked_full) {
    if (ctx.depths[id] >= d) out.push_back(id);
  }
  if (!out.empty()) return out;
  return ctx.ranked_top;
}

// Generates instance `index` of one (domain, kind, level) block. The RNG
// stream depends only on the global seed and the instance coordinates, so
// results are identical under any worker schedule.
std::optional<EmittedTask> generate_instance(const PipelineConfig& config,
                                             const DomainContext& ctx,
                                             const EntailmentOracle& oracle,
                                             const DifficultySpec& spec, int index,
                                             bool want_label) {
  std::uint64_t iseed = derive_seed(
      config.seed, {ctx.domain, to_string(spec.kind), "L" + std::to_string(spec.level),
                    std::to_string(index)});
  Rng rng(iseed);
  char idbuf[128];
  std::snprintf(idbuf, sizeof(idbuf), "%s-%s-L%d-%03d", ctx.domain.c_str(),
                to_string(spec.kind), spec.level, index + 1);
  EmittedTask emitted;
  emitted.id = idbuf;

  auto finish = [&](TaskInstance task) -> std::optional<EmittedTask> {
    std::visit([&](auto& t) { t.seed = iseed; }, task);
    emitted.task = std::move(task);
    return emitted;
  };

  if (spec.kind == TaskKind::kReconstruction) {
    auto task = gen_reconstruction(ctx.graph, ctx.ranked_full, spec, rng);
    if (!task) return std::nullopt;
    return finish(std::move(*task));
  }

  std::vector<NodeId> eligible = eligible_theorems(ctx, spec.d);
  if (eligible.empty()) return std::nullopt;

  if (spec.kind == TaskKind::kEntailment) {
    bool want = want_label;
    std::optional<EntailmentTask> fallback;
    for (int attempt = 0; attempt < config.retry_budget; ++attempt) {
      NodeId theorem = eligible[rng.uniform(static_cast<int>(eligible.size()))];
      try {
        EntailmentTask task = gen_entailment(ctx.graph, theorem, spec, rng, oracle, 3);
        if (task.label == want || spec.k == 0) return finish(std::move(task));
        if (!fallback) fallback = std::move(task);
      } catch (const InstanceDiscarded&) {
      } catch (const GenError&) {
      }
    }
    if (fallback) return finish(std::move(*fallback));
    return std::nullopt;
  }

  for (int attempt = 0; attempt < config.retry_budget; ++attempt) {
    NodeId theorem = eligible[rng.uniform(static_cast<int>(eligible.size()))];
    try {
      return finish(gen_selection(ctx.graph, theorem, spec, rng, oracle));
    } catch (const InstanceDiscarded&) {
    } catch (const GenError&) {
    }
  }
  return std::nullopt;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const std::string& out_dir) {
  config.validate();
  if (config.prover_mode == "external") config.external.validate();
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::unique_ptr<EntailmentOracle> oracle;
  if (config.prover_mode == "external") {
    oracle = std::make_unique<ExternalOracle>(config.external);
  } else {
    oracle = std::make_unique<InternalOracle>(config.oracle_limits);
  }

  struct Slot {
    DifficultySpec spec;
    int index = 0;
    bool want_label = false;
    const DomainContext* ctx = nullptr;
    std::optional<EmittedTask> result;
  };

  std::vector<EmittedTask> emitted;
  std::map<std::string, int> shortfall;
  std::vector<DomainContext> contexts;
  contexts.reserve(config.domains.size());
  for (const std::string& domain : config.domains) {
    contexts.push_back(prepare_domain(config, domain, out_dir));
  }
  std::vector<Slot> slots;
  // Alternating target labels over the whole plan keep emitted entailment
  // batches near 50/50 without cross-instance state.
  long long entailment_seq = 0;
  for (const DomainContext& ctx : contexts) {
    for (TaskKind kind : config.kinds) {
      for (int level : config.levels) {
        DifficultySpec spec = config.level_spec(kind, level);
        for (int index = 0; index < config.instances_per_config; ++index) {
          bool want = kind == TaskKind::kEntailment && entailment_seq++ % 2 == 0;
          slots.push_back({spec, index, want, &ctx, std::nullopt});
        }
      }
    }
  }

  auto work = [&](Slot& slot) {
    slot.result = generate_instance(config, *slot.ctx, *oracle, slot.spec, slot.index,
                                    slot.want_label);
  };
  if (config.workers <= 1) {
    for (Slot& slot : slots) work(slot);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < config.workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= slots.size()) break;
          work(slots[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (Slot& slot : slots) {
    if (slot.result) {
      emitted.push_back(std::move(*slot.result));
    } else {
      std::string key = slot.ctx->domain + "." + to_string(slot.spec.kind) + ".L" +
                        std::to_string(slot.spec.level);
      ++shortfall[key];
    }
  }

  PipelineResult result;
  result.jsonl_path = (fs::path(out_dir) / "dataset.jsonl").string();
  result.manifest_path = (fs::path(out_dir) / "manifest.json").string();
  result.manifest =
      emit_jsonl(emitted, result.jsonl_path, config.seed, config.domains, shortfall);
  return result;
}

}  // namespace clauseforge
