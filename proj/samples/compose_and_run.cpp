// End-to-end walk-through: build a small subtask pool, compose a task with a
// complexity constraint, inspect its profile, and score three agents on it.

#include <iostream>

#include "taskgraph.hpp"

using namespace taskgraph;

int main() {
  SubtaskPool pool;
  auto add = [&](const std::string& id, const std::string& app,
                 std::vector<std::string> in, std::vector<std::string> out,
                 const std::string& text) {
    Subtask s;
    s.id = id;
    s.application = app;
    s.instruction_template = text;
    s.os = "Windows";
    s.input_resources = std::move(in);
    s.output_resources = std::move(out);
    pool.add(s);
  };
  add("shot", "Snipping Tool", {}, {"img_path"}, "capture the window");
  add("crop", "Paint", {"img_path"}, {"img_cropped"}, "crop the screenshot");
  add("note", "OneNote", {"img_cropped"}, {"note_saved"},
      "paste the crop into today's note");
  add("mail", "Mail", {"img_cropped"}, {"mail_sent"},
      "mail the crop to the team");

  IntentGroup group{"share an annotated screenshot",
                    {"shot", "crop", "note", "mail"}};
  CompositionConstraint constraint;
  constraint.required_levels[Dimension::Instruction] = Level::Medium;
  TaskGraph task = compose(pool, group, constraint);

  std::cout << "instruction: " << task.instruction << "\n";
  ComplexityProfile profile = classify(task, pool.applications());
  for (Dimension d : kAllDimensions)
    std::cout << dimension_name(d) << ": " << profile[d].count << " ("
              << level_name(profile[d].level) << ")\n";
  std::cout << "topological orders: " << task.successful_topo.size() << "\n";

  for (const auto& [name, agent] :
       {std::pair<std::string, ScriptedAgent>{
            "perfect", ScriptedAgent::perfect(task.successful_topo.front())},
        {"shuffled", ScriptedAgent::shuffled(7)},
        {"stall", ScriptedAgent::stall()}}) {
    MetricsReport r = run_task(agent, make_task_run(task, pool, 8));
    std::cout << name << ": CR=" << r.cr.str() << " LC=" << r.lc.str()
              << " SR=" << (r.sr ? "yes" : "no") << " steps=" << r.steps_used
              << "\n";
  }
  return 0;
}
