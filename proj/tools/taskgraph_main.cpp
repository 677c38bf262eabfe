// Command-line front end: compose | classify | suite | evaluate | simulate |
// verify | stats. Exit codes: 0 success, 2 usage, 3 domain error,
// 4 infeasible composition constraint, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "taskgraph.hpp"

namespace fs = std::filesystem;
using namespace taskgraph;

namespace {

struct LevelOption {
  std::string text;
  std::optional<Level> get() const {
    if (text.empty()) return std::nullopt;
    return level_from_name(text);
  }
};

SubtaskPool load_pool(const fs::path& dir, std::vector<std::string>* warnings) {
  SubtaskPool pool;
  for (const auto& file : io::json_files(dir)) {
    io::ParseContext ctx{file.string(), warnings};
    pool.add(subtask_from_json(load_json_file(file), ctx));
  }
  return pool;
}

AppCategoryRegistry load_registry_or_default(const std::string& file) {
  if (file.empty()) return default_registry();
  io::ParseContext ctx{file, nullptr};
  return registry_from_json(load_json_file(file), ctx);
}

ComplexityConfig load_config_or_default(const std::string& file) {
  ComplexityConfig config;
  config.capabilities = builtin_capabilities();
  if (file.empty()) return config;
  std::ifstream in(file);
  if (!in) throw Error("cannot read config file '" + file + "'");
  ComplexityConfig loaded = load_complexity_config(in);
  if (loaded.capabilities.empty()) loaded.capabilities = config.capabilities;
  return loaded;
}

TaskGraph load_task_file(const fs::path& file) {
  io::ParseContext ctx{file.string(), nullptr};
  TaskGraph g = task_from_json(load_json_file(file), ctx);
  auto report = validate_graph(g);
  if (!report.empty())
    throw Error(file.string() + ": invalid task graph: " + report.front());
  return g;
}

std::map<NodeId, std::string> apps_for(const TaskGraph& g,
                                       const SubtaskPool& pool) {
  std::map<NodeId, std::string> out;
  for (const auto& id : g.nodes) out[id] = pool.at(id).application;
  return out;
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return;
  }
  write_text_file(out_file, text);
  std::cerr << "wrote " << out_file << "\n";
}

std::vector<std::string> matching_capabilities(
    const ComplexityProfile& profile,
    const std::vector<CapabilitySpec>& specs) {
  std::vector<std::string> out;
  for (const auto& spec : specs)
    if (matches_capability(profile, spec)) out.push_back(spec.name);
  return out;
}

ScriptedAgent agent_from_manifest(const BatchManifest& m, const TaskGraph& g) {
  if (m.agent_policy == "perfect") {
    if (g.successful_topo.empty())
      throw Error("perfect agent needs successful_topo in the task file");
    return ScriptedAgent::perfect(g.successful_topo.front());
  }
  if (m.agent_policy == "noisy") return ScriptedAgent::noisy(m.p_fail, m.seed);
  if (m.agent_policy == "shuffled") return ScriptedAgent::shuffled(m.seed);
  if (m.agent_policy == "stall") return ScriptedAgent::stall();
  throw Error("unknown agent policy '" + m.agent_policy + "'");
}

int run_compose(const std::string& pool_dir, const std::string& out_dir,
                const std::string& registry_file, const std::string& env_file,
                const std::vector<std::string>& members,
                const std::string& intent, const LevelOption levels[5],
                int min_nodes, int max_nodes, std::uint64_t seed, int budget) {
  std::vector<std::string> warnings;
  SubtaskPool pool = load_pool(pool_dir, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  AppCategoryRegistry registry = load_registry_or_default(registry_file);
  EnvironmentManifest env;
  if (!env_file.empty()) {
    io::ParseContext ctx{env_file, nullptr};
    env = manifest_from_json(load_json_file(env_file), ctx);
  }

  CompositionConstraint constraint;
  const Dimension dims[5] = {Dimension::Dependency, Dimension::Instruction,
                             Dimension::Knowledge, Dimension::Hierarchy,
                             Dimension::Branch};
  for (int i = 0; i < 5; ++i)
    if (auto level = levels[i].get()) constraint.required_levels[dims[i]] = *level;
  constraint.min_nodes = min_nodes;
  constraint.max_nodes = max_nodes;
  constraint.seed = seed;
  constraint.budget = budget;

  std::vector<IntentGroup> groups;
  if (!members.empty()) {
    groups.push_back({intent.empty() ? "ad-hoc group" : intent, members});
  } else {
    groups = ResourceChainExtractor().extract(pool);
  }

  int written = 0, infeasible = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    try {
      TaskGraph g = compose(pool, groups[i], constraint, registry, env);
      fs::path out = fs::path(out_dir) /
                     ("task-" + std::to_string(written + 1) + ".json");
      write_text_file(out, canonical_dump(task_to_json(g)));
      std::cout << out.string() << "\n";
      ++written;
    } catch (const InfeasibleConstraintError& e) {
      ++infeasible;
      std::cerr << "group '" << groups[i].intent << "': " << e.what() << "\n";
    }
  }
  if (written == 0 && infeasible > 0) return 4;
  return 0;
}

int run_classify(const std::vector<std::string>& task_files,
                 const std::string& pool_dir, const std::string& registry_file,
                 const std::string& config_file) {
  SubtaskPool pool = load_pool(pool_dir, nullptr);
  AppCategoryRegistry registry = load_registry_or_default(registry_file);
  ComplexityConfig config = load_config_or_default(config_file);
  std::cout << "task  dependency  instruction  knowledge  hierarchy  branch\n";
  for (const auto& file : task_files) {
    TaskGraph g = load_task_file(file);
    ComplexityProfile p =
        classify(g, apps_for(g, pool), registry, config.thresholds);
    std::ostringstream row;
    row << fs::path(file).stem().string();
    for (Dimension d : kAllDimensions)
      row << "  " << dimension_name(d) << "=" << p[d].count << "("
          << level_name(p[d].level) << ")";
    std::cout << row.str() << "\n";
  }
  return 0;
}

int run_suite(const std::vector<std::string>& task_files,
              const std::string& pool_dir, const std::string& registry_file,
              const std::string& config_file, const std::string& capability) {
  SubtaskPool pool = load_pool(pool_dir, nullptr);
  AppCategoryRegistry registry = load_registry_or_default(registry_file);
  ComplexityConfig config = load_config_or_default(config_file);
  const CapabilitySpec* spec = nullptr;
  for (const auto& s : config.capabilities)
    if (s.name == capability) spec = &s;
  if (!spec) throw Error("unknown capability '" + capability + "'");
  for (const auto& file : task_files) {
    TaskGraph g = load_task_file(file);
    ComplexityProfile p =
        classify(g, apps_for(g, pool), registry, config.thresholds);
    if (matches_capability(p, *spec)) std::cout << file << "\n";
  }
  return 0;
}

int run_evaluate(const std::string& task_file, const std::string& traj_file,
                 const std::string& pool_dir, const std::string& eval_dir,
                 const std::string& reference_file, int max_steps,
                 const std::string& out_file) {
  SubtaskPool pool = load_pool(pool_dir, nullptr);
  TaskGraph g = load_task_file(task_file);
  io::ParseContext traj_ctx{traj_file, nullptr};
  TaskTrajectory traj =
      task_trajectory_from_json(load_json_file(traj_file), traj_ctx);

  std::map<NodeId, EvalFunction> bindings;
  for (const auto& id : g.nodes) {
    fs::path fn_file = fs::path(eval_dir) / (id + ".json");
    io::ParseContext ctx{fn_file.string(), nullptr};
    bindings[id] = eval_function_from_json(load_json_file(fn_file), ctx);
  }

  EvaluationRun run(g, bindings, max_steps);
  EventLog log;
  for (const auto& action : traj.actions) {
    if (run.terminated()) break;
    run.step(action, log);
  }

  MetricsReport report;
  report.cr = coverage_rate(g, run.completed());
  report.lc = logical_consistency(g, run.completion_order(), apps_for(g, pool));
  report.sr = run.succeeded();
  report.steps_used = run.steps_used();
  report.failure_reason = run.failure_reason();
  if (!run.terminated() && !run.succeeded())
    report.failure_reason = "trajectory exhausted before completion";
  if (!reference_file.empty()) {
    io::ParseContext ref_ctx{reference_file, nullptr};
    TaskTrajectory ref =
        task_trajectory_from_json(load_json_file(reference_file), ref_ctx);
    report.ams = action_match_score(traj.actions, ref.actions);
  }
  emit(canonical_dump(metrics_to_json(report)), out_file);
  return 0;
}

int run_simulate(const std::string& manifest_file, const std::string& out_file) {
  BatchManifest manifest = load_batch_manifest(manifest_file);
  SubtaskPool pool = load_pool(manifest.pool_dir, nullptr);
  AppCategoryRegistry registry = manifest.registry_file
                                     ? load_registry_or_default(
                                           manifest.registry_file->string())
                                     : default_registry();
  std::vector<BatchResultRow> rows;
  for (const auto& task_file : manifest.task_files) {
    TaskGraph g = load_task_file(task_file);
    TaskRun setup = make_task_run(g, pool, manifest.max_steps);
    MetricsReport report = run_task(agent_from_manifest(manifest, g), setup);
    ComplexityProfile profile = classify(g, setup.app_of, registry);
    rows.push_back({task_file.stem().string(),
                    matching_capabilities(profile, builtin_capabilities()),
                    report});
  }
  emit(results_csv(rows), out_file);
  return 0;
}

int run_verify(const std::string& subtask_file, int max_iters,
               bool break_first) {
  io::ParseContext ctx{subtask_file, nullptr};
  Subtask subtask = subtask_from_json(load_json_file(subtask_file), ctx);
  EvalFunctionSynth eval_synth = reference_eval_synth();
  if (break_first) {
    // demonstrate the repair loop: first candidate checks a control that the
    // trajectory never touches, the retry falls back to the reference
    eval_synth = [](const Subtask& s, const std::vector<std::string>& feedback) {
      if (feedback.empty()) {
        EvalFunction fn;
        fn.checks.push_back(
            {"check_mouse_clicks",
             {{"text", "Nonexistent Button"}},
             "Subtask execution failed because agent did not click the "
             "'Nonexistent Button' control."});
        return fn;
      }
      return reference_eval_function(s);
    };
  }
  VerificationOutcome outcome = cross_verify(
      reference_trajectory_synth(), eval_synth, subtask, max_iters);
  std::cout << "status: " << verification_status_name(outcome.status) << "\n"
            << "iterations: " << outcome.iterations << "\n";
  for (std::size_t i = 0; i < outcome.transcript.size(); ++i)
    std::cout << "feedback[" << i + 1 << "]: " << outcome.transcript[i] << "\n";
  return outcome.status == VerificationStatus::Verified ? 0 : 3;
}

int run_stats(const std::string& bundle_dir) {
  DatasetBundle bundle = load_bundle(fs::path(bundle_dir));
  for (const auto& w : bundle.warnings) std::cerr << "warning: " << w << "\n";

  std::size_t total_words = 0;
  double total_apps = 0;
  std::set<std::set<std::string>> scenarios;
  for (const auto& [id, g] : bundle.tasks) {
    std::istringstream words(g.instruction);
    std::string w;
    while (words >> w) ++total_words;
    std::set<std::string> apps, categories;
    for (const auto& node : g.nodes) {
      apps.insert(bundle.pool.at(node).application);
      categories.insert(
          bundle.registry.category_of(bundle.pool.at(node).application));
    }
    total_apps += static_cast<double>(apps.size());
    scenarios.insert(categories);
  }
  auto fixed2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  const std::size_t n = bundle.tasks.size();
  std::cout << "Total Tasks: " << n << "\n";
  std::cout << "Total Subtasks: " << bundle.pool.size() << "\n";
  if (n > 0) {
    std::cout << "Avg. Words of Task Instruction: "
              << fixed2(static_cast<double>(total_words) /
                        static_cast<double>(n))
              << "\n";
    std::cout << "Avg. Applications per Task: "
              << fixed2(total_apps / static_cast<double>(n)) << "\n";
  }
  std::cout << "Task Scenarios: " << scenarios.size() << "\n";
  std::cout << "Task Trajectories: " << bundle.task_trajectories.size() << "\n";
  std::cout << "Evaluation Functions: " << bundle.eval_functions.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-structured task composition and agent evaluation"};
  app.require_subcommand(1);

  // compose
  auto* compose_cmd =
      app.add_subcommand("compose", "Compose tasks from a subtask pool");
  std::string pool_dir, out_dir, registry_file, env_file, intent, config_file;
  std::vector<std::string> members;
  LevelOption levels[5];
  int min_nodes = 1, max_nodes = kTopoEnumerationCap, budget = 10000;
  std::uint64_t seed = 0;
  compose_cmd->add_option("--pool", pool_dir, "Subtask metadata directory")
      ->required();
  compose_cmd->add_option("--out", out_dir, "Output directory for task files")
      ->required();
  compose_cmd->add_option("--registry", registry_file, "Registry JSON file");
  compose_cmd->add_option("--env", env_file,
                          "Environment resource manifest JSON");
  compose_cmd->add_option("--members", members,
                          "Explicit intent-group member ids");
  compose_cmd->add_option("--intent", intent, "Intent text for --members");
  compose_cmd->add_option("--dependency", levels[0].text,
                          "Required dependency level (easy|medium|hard)");
  compose_cmd->add_option("--instruction", levels[1].text,
                          "Required instruction level");
  compose_cmd->add_option("--knowledge", levels[2].text,
                          "Required knowledge level");
  compose_cmd->add_option("--hierarchy", levels[3].text,
                          "Required hierarchy level");
  compose_cmd->add_option("--branch", levels[4].text, "Required branch level");
  compose_cmd->add_option("--min-nodes", min_nodes, "Minimum node count");
  compose_cmd->add_option("--max-nodes", max_nodes, "Maximum node count");
  compose_cmd->add_option("--seed", seed, "Search seed");
  compose_cmd->add_option("--budget", budget, "Candidate budget");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "Show complexity profiles of tasks");
  std::vector<std::string> task_files;
  classify_cmd->add_option("--tasks", task_files, "Task JSON files")
      ->required();
  classify_cmd->add_option("--pool", pool_dir, "Subtask metadata directory")
      ->required();
  classify_cmd->add_option("--registry", registry_file, "Registry JSON file");
  classify_cmd->add_option("--config", config_file,
                           "Thresholds/capabilities rule file");

  // suite
  auto* suite_cmd =
      app.add_subcommand("suite", "Filter tasks matching a capability");
  std::string capability;
  suite_cmd->add_option("--tasks", task_files, "Task JSON files")->required();
  suite_cmd->add_option("--pool", pool_dir, "Subtask metadata directory")
      ->required();
  suite_cmd->add_option("--capability", capability, "Capability name")
      ->required();
  suite_cmd->add_option("--registry", registry_file, "Registry JSON file");
  suite_cmd->add_option("--config", config_file,
                        "Thresholds/capabilities rule file");

  // evaluate
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Replay a task trajectory through the evaluator");
  std::string task_file, traj_file, eval_dir, reference_file, out_file;
  int max_steps = kDefaultStepBudget;
  eval_cmd->add_option("--task", task_file, "Task JSON file")->required();
  eval_cmd->add_option("--trajectory", traj_file, "Task trajectory JSON")
      ->required();
  eval_cmd->add_option("--pool", pool_dir, "Subtask metadata directory")
      ->required();
  eval_cmd->add_option("--eval", eval_dir, "Evaluation function directory")
      ->required();
  eval_cmd->add_option("--reference", reference_file,
                       "Reference trajectory for the action match score");
  eval_cmd->add_option("--max-steps", max_steps, "Step budget N");
  eval_cmd->add_option("--out", out_file, "Write the report here");

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "Run scripted agents over a batch");
  std::string manifest_file;
  sim_cmd->add_option("--manifest", manifest_file, "Batch manifest JSON")
      ->required();
  sim_cmd->add_option("--out", out_file, "Write the CSV here");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Cross-verify a subtask's trajectory and evaluation function");
  std::string subtask_file;
  int max_iters = 3;
  bool break_first = false;
  verify_cmd->add_option("--subtask", subtask_file, "Subtask JSON file")
      ->required();
  verify_cmd->add_option("--max-iters", max_iters, "Iteration budget");
  verify_cmd->add_flag("--break-first", break_first,
                       "Make the first evaluation candidate wrong");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Dataset bundle statistics");
  std::string bundle_dir;
  stats_cmd->add_option("--bundle", bundle_dir, "Bundle root directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compose_cmd->parsed())
      return run_compose(pool_dir, out_dir, registry_file, env_file, members,
                         intent, levels, min_nodes, max_nodes, seed, budget);
    if (classify_cmd->parsed())
      return run_classify(task_files, pool_dir, registry_file, config_file);
    if (suite_cmd->parsed())
      return run_suite(task_files, pool_dir, registry_file, config_file,
                       capability);
    if (eval_cmd->parsed())
      return run_evaluate(task_file, traj_file, pool_dir, eval_dir,
                          reference_file, max_steps, out_file);
    if (sim_cmd->parsed()) return run_simulate(manifest_file, out_file);
    if (verify_cmd->parsed())
      return run_verify(subtask_file, max_iters, break_first);
    if (stats_cmd->parsed()) return run_stats(bundle_dir);
  } catch (const InfeasibleConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
