#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "taskgraph/action.hpp"
#include "taskgraph/app_registry.hpp"
#include "taskgraph/composer.hpp"
#include "taskgraph/complexity.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/eval_function.hpp"
#include "taskgraph/evaluator.hpp"
#include "taskgraph/event_log.hpp"
#include "taskgraph/graph.hpp"
#include "taskgraph/metrics.hpp"
#include "taskgraph/subtask.hpp"

namespace taskgraph {

using json = nlohmann::json;

struct SubtaskTrajectory {
  std::string trajectory_id;
  std::string instruction;
  std::vector<std::string> observations;  // opaque screenshot names
  std::vector<Action> actions;
  std::string subtask_id;

  friend bool operator==(const SubtaskTrajectory&, const SubtaskTrajectory&) =
      default;
};

struct TaskTrajectory {
  std::string trajectory_id;
  std::string task_id;
  std::vector<NodeId> topological_order;
  std::string instruction;
  std::string intent;
  std::vector<std::string> observations;
  std::vector<Action> actions;

  friend bool operator==(const TaskTrajectory&, const TaskTrajectory&) =
      default;
};

namespace io {

struct ParseContext {
  std::string file;
  std::vector<std::string>* warnings = nullptr;
};

inline void warn_unknown_keys(const json& j,
                              std::initializer_list<const char*> known,
                              const ParseContext& ctx, const char* what) {
  if (!ctx.warnings || !j.is_object()) return;
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const char* k : known)
      if (key == k) found = true;
    if (!found)
      ctx.warnings->push_back(ctx.file + ": unknown " + what + " field '" +
                              key + "'");
  }
}

inline const json& require(const json& j, const char* key,
                           const ParseContext& ctx) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ctx.file + ": missing required field '" + key + "'");
  return j.at(key);
}

inline std::string require_string(const json& j, const char* key,
                                  const ParseContext& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_string())
    throw Error(ctx.file + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<std::string> require_string_array(const json& j,
                                                     const char* key,
                                                     const ParseContext& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_array())
    throw Error(ctx.file + ": field '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string())
      throw Error(ctx.file + ": field '" + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace io

// ---- Action (trajectory "actions" entries) ----

inline json action_to_json(const Action& a) {
  json j;
  j["function"] = action_kind_name(a.kind);
  json args = json::object();
  switch (a.kind) {
    case ActionKind::ClickInput:
      args["button"] = a.button;
      args["double"] = a.double_click;
      break;
    case ActionKind::WheelMouseInput:
      args["dx"] = a.dx;
      args["dy"] = a.dy;
      break;
    case ActionKind::KeyboardInput:
      args["text"] = a.text;
      break;
  }
  j["args"] = std::move(args);
  if (a.rect) j["rect"] = *a.rect;
  if (a.description) j["description"] = *a.description;
  if (a.thought) j["thought"] = *a.thought;
  if (a.control_text) j["control_text"] = *a.control_text;
  return j;
}

inline Action action_from_json(const json& j, const io::ParseContext& ctx) {
  io::warn_unknown_keys(
      j, {"function", "args", "rect", "description", "thought", "control_text"},
      ctx, "action");
  Action a;
  a.kind = action_kind_from_name(io::require_string(j, "function", ctx));
  const json& args = io::require(j, "args", ctx);
  io::warn_unknown_keys(args, {"button", "double", "dx", "dy", "text"}, ctx,
                        "action args");
  switch (a.kind) {
    case ActionKind::ClickInput:
      a.button = io::require_string(args, "button", ctx);
      if (!args.contains("double") || !args["double"].is_boolean())
        throw Error(ctx.file + ": click_input requires boolean arg 'double'");
      a.double_click = args["double"].get<bool>();
      break;
    case ActionKind::WheelMouseInput:
      a.dx = args.value("dx", 0);
      a.dy = args.value("dy", 0);
      break;
    case ActionKind::KeyboardInput:
      a.text = io::require_string(args, "text", ctx);
      break;
  }
  if (j.contains("rect")) {
    const json& r = j["rect"];
    if (!r.is_array() || r.size() != 4)
      throw Error(ctx.file + ": 'rect' must be a 4-element array");
    a.rect = {r[0].get<int>(), r[1].get<int>(), r[2].get<int>(),
              r[3].get<int>()};
  }
  if (j.contains("description"))
    a.description = j["description"].get<std::string>();
  if (j.contains("thought")) a.thought = j["thought"].get<std::string>();
  if (j.contains("control_text"))
    a.control_text = j["control_text"].get<std::string>();
  validate_action(a);
  return a;
}

// ---- Subtask metadata ----

inline json subtask_to_json(const Subtask& s) {
  json j;
  j["id"] = s.id;
  j["instruction_template"] = s.instruction_template;
  j["application"] = s.application;
  j["available_parameters"] = s.available_parameters;
  j["OS"] = s.os;
  j["input_resources"] = s.input_resources;
  j["output_resources"] = s.output_resources;
  return j;
}

inline Subtask subtask_from_json(const json& j, const io::ParseContext& ctx) {
  io::warn_unknown_keys(j,
                        {"id", "instruction_template", "application",
                         "available_parameters", "OS", "input_resources",
                         "output_resources"},
                        ctx, "subtask");
  Subtask s;
  s.id = io::require_string(j, "id", ctx);
  s.instruction_template = io::require_string(j, "instruction_template", ctx);
  s.application = io::require_string(j, "application", ctx);
  const json& params = io::require(j, "available_parameters", ctx);
  if (!params.is_array())
    throw Error(ctx.file + ": 'available_parameters' must be an array");
  for (const auto& set : params) {
    ParameterSet ps;
    for (const auto& [k, v] : set.items()) ps[k] = v.get<std::string>();
    s.available_parameters.push_back(std::move(ps));
  }
  s.os = io::require_string(j, "OS", ctx);
  s.input_resources = io::require_string_array(j, "input_resources", ctx);
  s.output_resources = io::require_string_array(j, "output_resources", ctx);
  return s;
}

// ---- Task metadata ----

inline json task_to_json(const TaskGraph& g) {
  json dag;
  dag["nodes"] = g.nodes;
  json edges = json::object();
  for (const auto& [from, succ] : g.edges) edges[from] = succ;
  dag["edges"] = std::move(edges);
  json j;
  j["task_instruction"] = g.instruction;
  j["dag"] = std::move(dag);
  j["task_intent"] = g.intent;
  j["successful_topo"] = g.successful_topo;
  return j;
}

inline TaskGraph task_from_json(const json& j, const io::ParseContext& ctx) {
  io::warn_unknown_keys(
      j, {"task_instruction", "dag", "task_intent", "successful_topo"}, ctx,
      "task");
  const json& dag = io::require(j, "dag", ctx);
  io::warn_unknown_keys(dag, {"nodes", "edges"}, ctx, "dag");
  std::vector<NodeId> nodes = io::require_string_array(dag, "nodes", ctx);
  const json& edges = io::require(dag, "edges", ctx);
  if (!edges.is_object())
    throw Error(ctx.file + ": 'edges' must be an object");
  std::vector<Edge> edge_list;
  for (const auto& [from, succ] : edges.items()) {
    if (!succ.is_array())
      throw Error(ctx.file + ": edges of '" + from + "' must be an array");
    for (const auto& to : succ)
      edge_list.emplace_back(from, to.get<std::string>());
  }
  TaskGraph g = TaskGraph::make(std::move(nodes), edge_list,
                                io::require_string(j, "task_intent", ctx),
                                io::require_string(j, "task_instruction", ctx));
  const json& topo = io::require(j, "successful_topo", ctx);
  if (!topo.is_array())
    throw Error(ctx.file + ": 'successful_topo' must be an array");
  for (const auto& order : topo)
    g.successful_topo.push_back(order.get<std::vector<NodeId>>());
  return g;
}

// ---- Trajectories ----

inline json subtask_trajectory_to_json(const SubtaskTrajectory& t) {
  json j;
  j["trajectory_id"] = t.trajectory_id;
  j["instruction"] = t.instruction;
  j["observations"] = t.observations;
  json actions = json::array();
  for (const auto& a : t.actions) actions.push_back(action_to_json(a));
  j["actions"] = std::move(actions);
  j["subtask_id"] = t.subtask_id;
  return j;
}

inline SubtaskTrajectory subtask_trajectory_from_json(
    const json& j, const io::ParseContext& ctx) {
  io::warn_unknown_keys(
      j, {"trajectory_id", "instruction", "observations", "actions",
          "subtask_id"},
      ctx, "subtask trajectory");
  SubtaskTrajectory t;
  t.trajectory_id = io::require_string(j, "trajectory_id", ctx);
  t.instruction = io::require_string(j, "instruction", ctx);
  t.observations = io::require_string_array(j, "observations", ctx);
  for (const auto& a : io::require(j, "actions", ctx))
    t.actions.push_back(action_from_json(a, ctx));
  t.subtask_id = io::require_string(j, "subtask_id", ctx);
  return t;
}

inline json task_trajectory_to_json(const TaskTrajectory& t) {
  json j;
  j["trajectory_id"] = t.trajectory_id;
  j["task_id"] = t.task_id;
  j["topological_order"] = t.topological_order;
  j["instruction"] = t.instruction;
  j["intent"] = t.intent;
  j["observations"] = t.observations;
  json actions = json::array();
  for (const auto& a : t.actions) actions.push_back(action_to_json(a));
  j["actions"] = std::move(actions);
  return j;
}

inline TaskTrajectory task_trajectory_from_json(const json& j,
                                                const io::ParseContext& ctx) {
  io::warn_unknown_keys(j,
                        {"trajectory_id", "task_id", "topological_order",
                         "instruction", "intent", "observations", "actions"},
                        ctx, "task trajectory");
  TaskTrajectory t;
  t.trajectory_id = io::require_string(j, "trajectory_id", ctx);
  t.task_id = io::require_string(j, "task_id", ctx);
  t.topological_order = io::require_string_array(j, "topological_order", ctx);
  t.instruction = io::require_string(j, "instruction", ctx);
  t.intent = io::require_string(j, "intent", ctx);
  t.observations = io::require_string_array(j, "observations", ctx);
  for (const auto& a : io::require(j, "actions", ctx))
    t.actions.push_back(action_from_json(a, ctx));
  return t;
}

// ---- Evaluation functions: ordered list of {api, args, message} ----

inline json eval_function_to_json(const EvalFunction& fn) {
  json j = json::array();
  for (const auto& c : fn.checks)
    j.push_back({{"api", c.api}, {"args", c.args}, {"message", c.message}});
  return j;
}

inline EvalFunction eval_function_from_json(const json& j,
                                            const io::ParseContext& ctx) {
  if (!j.is_array())
    throw Error(ctx.file + ": evaluation function must be a JSON array");
  EvalFunction fn;
  for (const auto& entry : j) {
    io::warn_unknown_keys(entry, {"api", "args", "message"}, ctx, "check");
    Check c;
    c.api = io::require_string(entry, "api", ctx);
    c.args = io::require(entry, "args", ctx);
    c.message = io::require_string(entry, "message", ctx);
    if (!check_api_registry().count(c.api))
      throw Error(ctx.file + ": unknown check api '" + c.api + "'");
    fn.checks.push_back(std::move(c));
  }
  if (fn.checks.empty())
    throw Error(ctx.file + ": evaluation function has no checks");
  return fn;
}

// ---- Registry, environment manifest, event log snapshot ----

inline json registry_to_json(const AppCategoryRegistry& r) {
  json categories = json::object();
  for (const auto& [category, apps] : r.by_category())
    categories[category] = apps;
  return json{{"categories", categories}};
}

inline AppCategoryRegistry registry_from_json(const json& j,
                                              const io::ParseContext& ctx) {
  io::warn_unknown_keys(j, {"categories"}, ctx, "registry");
  const json& categories = io::require(j, "categories", ctx);
  AppCategoryRegistry r;
  for (const auto& [category, apps] : categories.items())
    for (const auto& app : apps) r.add(app.get<std::string>(), category);
  return r;
}

inline json manifest_to_json(const EnvironmentManifest& m) {
  return json(std::vector<std::string>(m.provided.begin(), m.provided.end()));
}

inline EnvironmentManifest manifest_from_json(const json& j,
                                              const io::ParseContext& ctx) {
  if (!j.is_array())
    throw Error(ctx.file + ": environment manifest must be a JSON array");
  EnvironmentManifest m;
  for (const auto& cat : j) m.provided.insert(cat.get<std::string>());
  return m;
}

inline json event_log_to_json(const EventLog& log) {
  json actions = json::array();
  for (const auto& a : log.actions()) actions.push_back(action_to_json(a));
  const EnvironmentFacts& f = log.facts();
  json facts;
  facts["files"] = std::vector<std::string>(f.files.begin(), f.files.end());
  facts["screen_texts"] =
      std::vector<std::string>(f.screen_texts.begin(), f.screen_texts.end());
  facts["control_texts"] =
      std::vector<std::string>(f.control_texts.begin(), f.control_texts.end());
  facts["clipboard"] = f.clipboard ? json(*f.clipboard) : json(nullptr);
  facts["window_title"] = f.window_title ? json(*f.window_title) : json(nullptr);
  return json{{"actions", actions}, {"facts", facts}};
}

inline EventLog event_log_from_json(const json& j,
                                    const io::ParseContext& ctx) {
  EnvironmentFacts facts;
  const json& f = io::require(j, "facts", ctx);
  for (const auto& x : io::require(f, "files", ctx))
    facts.files.insert(x.get<std::string>());
  for (const auto& x : io::require(f, "screen_texts", ctx))
    facts.screen_texts.insert(x.get<std::string>());
  for (const auto& x : io::require(f, "control_texts", ctx))
    facts.control_texts.insert(x.get<std::string>());
  if (f.contains("clipboard") && !f["clipboard"].is_null())
    facts.clipboard = f["clipboard"].get<std::string>();
  if (f.contains("window_title") && !f["window_title"].is_null())
    facts.window_title = f["window_title"].get<std::string>();
  EventLog log(std::move(facts));
  for (const auto& a : io::require(j, "actions", ctx))
    log.append(action_from_json(a, ctx));
  return log;
}

// ---- Metrics ----

inline std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline json metrics_to_json(const MetricsReport& r) {
  json j;
  j["cr"] = r.cr.to_double();
  j["cr_exact"] = r.cr.str();
  j["lc"] = r.lc.to_double();
  j["lc_exact"] = r.lc.str();
  j["sr"] = r.sr;
  j["ams"] = r.ams ? json(r.ams->to_double()) : json(nullptr);
  j["ams_exact"] = r.ams ? json(r.ams->str()) : json(nullptr);
  j["steps_used"] = r.steps_used;
  j["failure_reason"] =
      r.failure_reason ? json(*r.failure_reason) : json(nullptr);
  return j;
}

struct BatchResultRow {
  std::string task_id;
  std::vector<std::string> capabilities;
  MetricsReport report;
};

// CSV column order: task id, capability tags, CR, LC, SR, AMS, steps.
inline std::string results_csv(const std::vector<BatchResultRow>& rows) {
  std::string out = "task_id,capabilities,cr,lc,sr,ams,steps\n";
  for (const auto& row : rows) {
    std::string caps;
    for (const auto& c : row.capabilities)
      caps += (caps.empty() ? "" : ";") + c;
    out += row.task_id + "," + caps + "," + fixed6(row.report.cr.to_double()) +
           "," + fixed6(row.report.lc.to_double()) + "," +
           (row.report.sr ? "1" : "0") + "," +
           (row.report.ams ? fixed6(row.report.ams->to_double()) : "") + "," +
           std::to_string(row.report.steps_used) + "\n";
  }
  return out;
}

// ---- Files and bundles ----

// Canonical form: sorted keys, four-space indent, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(4) + "\n"; }

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return j;
}

// The full dataset: the subtask pool, task graphs keyed by file stem,
// trajectories, evaluation functions keyed by subtask id, and the
// application registry.
struct DatasetBundle {
  SubtaskPool pool;
  std::map<std::string, TaskGraph> tasks;
  std::map<std::string, SubtaskTrajectory> subtask_trajectories;
  std::map<std::string, TaskTrajectory> task_trajectories;
  std::map<std::string, EvalFunction> eval_functions;
  AppCategoryRegistry registry = default_registry();
  std::vector<std::string> warnings;
};

struct BundlePaths {
  std::optional<std::filesystem::path> subtasks_dir;
  std::optional<std::filesystem::path> tasks_dir;
  std::optional<std::filesystem::path> subtask_trajectories_dir;
  std::optional<std::filesystem::path> task_trajectories_dir;
  std::optional<std::filesystem::path> eval_functions_dir;
  std::optional<std::filesystem::path> registry_file;

  // The conventional layout under one root, using whichever parts exist.
  static BundlePaths under(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    BundlePaths p;
    auto take = [&](const fs::path& candidate)
        -> std::optional<fs::path> {
      return fs::exists(candidate) ? std::optional<fs::path>(candidate)
                                   : std::nullopt;
    };
    p.subtasks_dir = take(root / "subtasks");
    p.tasks_dir = take(root / "tasks");
    p.subtask_trajectories_dir = take(root / "trajectories" / "subtasks");
    p.task_trajectories_dir = take(root / "trajectories" / "tasks");
    p.eval_functions_dir = take(root / "eval_functions");
    p.registry_file = take(root / "registry.json");
    return p;
  }
};

namespace io {

inline std::vector<std::filesystem::path> json_files(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::exists(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace io

// Loads and links every provided part. Cross-file references are checked
// against whichever collections were supplied: a dangling id names both the
// referencing file and the missing id. Unknown fields only warn.
inline DatasetBundle load_bundle(const BundlePaths& paths) {
  DatasetBundle bundle;
  if (paths.registry_file) {
    io::ParseContext ctx{paths.registry_file->string(), &bundle.warnings};
    bundle.registry = registry_from_json(load_json_file(*paths.registry_file),
                                         ctx);
  }
  if (paths.subtasks_dir) {
    for (const auto& file : io::json_files(*paths.subtasks_dir)) {
      io::ParseContext ctx{file.string(), &bundle.warnings};
      try {
        bundle.pool.add(subtask_from_json(load_json_file(file), ctx));
      } catch (const Error& e) {
        throw Error(file.string() + ": " + e.what());
      }
    }
  }
  if (paths.tasks_dir) {
    for (const auto& file : io::json_files(*paths.tasks_dir)) {
      io::ParseContext ctx{file.string(), &bundle.warnings};
      TaskGraph g = task_from_json(load_json_file(file), ctx);
      auto report = validate_graph(g);
      if (!report.empty())
        throw Error(file.string() + ": invalid task graph: " + report.front());
      bundle.tasks[file.stem().string()] = std::move(g);
    }
  }
  if (paths.eval_functions_dir) {
    for (const auto& file : io::json_files(*paths.eval_functions_dir)) {
      io::ParseContext ctx{file.string(), &bundle.warnings};
      bundle.eval_functions[file.stem().string()] =
          eval_function_from_json(load_json_file(file), ctx);
    }
  }
  if (paths.subtask_trajectories_dir) {
    for (const auto& file : io::json_files(*paths.subtask_trajectories_dir)) {
      io::ParseContext ctx{file.string(), &bundle.warnings};
      SubtaskTrajectory t =
          subtask_trajectory_from_json(load_json_file(file), ctx);
      bundle.subtask_trajectories[t.trajectory_id] = std::move(t);
    }
  }
  if (paths.task_trajectories_dir) {
    for (const auto& file : io::json_files(*paths.task_trajectories_dir)) {
      io::ParseContext ctx{file.string(), &bundle.warnings};
      TaskTrajectory t = task_trajectory_from_json(load_json_file(file), ctx);
      bundle.task_trajectories[t.trajectory_id] = std::move(t);
    }
  }

  // reference resolution across the loaded parts
  if (paths.subtasks_dir) {
    for (const auto& [task_id, g] : bundle.tasks)
      for (const auto& node : g.nodes)
        if (!bundle.pool.contains(node))
          throw Error("task '" + task_id + "' references unknown subtask '" +
                      node + "'");
    for (const auto& [tid, t] : bundle.subtask_trajectories)
      if (!bundle.pool.contains(t.subtask_id))
        throw Error("trajectory '" + tid + "' references unknown subtask '" +
                    t.subtask_id + "'");
    for (const auto& [sid, fn] : bundle.eval_functions)
      if (!bundle.pool.contains(sid))
        throw Error("evaluation function file '" + sid +
                    "' references unknown subtask '" + sid + "'");
  }
  if (paths.tasks_dir) {
    for (const auto& [tid, t] : bundle.task_trajectories) {
      auto it = bundle.tasks.find(t.task_id);
      if (it == bundle.tasks.end())
        throw Error("trajectory '" + tid + "' references unknown task '" +
                    t.task_id + "'");
      for (const auto& node : t.topological_order)
        if (!it->second.has_node(node))
          throw Error("trajectory '" + tid + "' orders unknown node '" + node +
                      "'");
    }
  }
  return bundle;
}

inline DatasetBundle load_bundle(const std::filesystem::path& root) {
  return load_bundle(BundlePaths::under(root));
}

// Writes the bundle in the conventional layout; returns the written files.
// Output is canonical, so saving twice yields byte-identical files.
inline std::vector<std::filesystem::path> save_bundle(
    const DatasetBundle& bundle, const std::filesystem::path& root) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& p, const json& j) {
    write_text_file(p, canonical_dump(j));
    written.push_back(p);
  };
  for (const auto& [id, s] : bundle.pool.subtasks())
    emit(root / "subtasks" / (id + ".json"), subtask_to_json(s));
  for (const auto& [id, g] : bundle.tasks)
    emit(root / "tasks" / (id + ".json"), task_to_json(g));
  for (const auto& [tid, t] : bundle.subtask_trajectories)
    emit(root / "trajectories" / "subtasks" / (tid + ".json"),
         subtask_trajectory_to_json(t));
  for (const auto& [tid, t] : bundle.task_trajectories)
    emit(root / "trajectories" / "tasks" / (tid + ".json"),
         task_trajectory_to_json(t));
  for (const auto& [sid, fn] : bundle.eval_functions)
    emit(root / "eval_functions" / (sid + ".json"), eval_function_to_json(fn));
  emit(root / "registry.json", registry_to_json(bundle.registry));
  return written;
}

// ---- Batch manifest for the simulate command ----

struct BatchManifest {
  std::filesystem::path pool_dir;
  std::optional<std::filesystem::path> registry_file;
  std::vector<std::filesystem::path> task_files;
  std::string agent_policy = "perfect";  // perfect | noisy | shuffled | stall
  double p_fail = 0.0;
  std::uint64_t seed = 0;
  int max_steps = kDefaultStepBudget;
};

// Relative paths inside the manifest resolve against the manifest's
// directory.
inline BatchManifest load_batch_manifest(const std::filesystem::path& file) {
  const json j = load_json_file(file);
  io::ParseContext ctx{file.string(), nullptr};
  const auto base = file.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  BatchManifest m;
  m.pool_dir = resolve(io::require_string(j, "pool_dir", ctx));
  if (j.contains("registry_file"))
    m.registry_file = resolve(j["registry_file"].get<std::string>());
  for (const auto& t : io::require(j, "tasks", ctx))
    m.task_files.push_back(resolve(t.get<std::string>()));
  if (j.contains("agent")) {
    const json& agent = j["agent"];
    m.agent_policy = agent.value("policy", std::string("perfect"));
    m.p_fail = agent.value("p_fail", 0.0);
    m.seed = agent.value("seed", std::uint64_t{0});
  }
  m.max_steps = j.value("max_steps", kDefaultStepBudget);
  return m;
}

}  // namespace taskgraph
