#include "taskgraph/composer.hpp"

#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "taskgraph/instruction.hpp"

namespace taskgraph {
namespace {

Subtask make_subtask(std::string id, std::string app, std::string tpl,
                     std::vector<std::string> inputs,
                     std::vector<std::string> outputs,
                     std::vector<ParameterSet> params = {}) {
  Subtask s;
  s.id = std::move(id);
  s.application = std::move(app);
  s.instruction_template = std::move(tpl);
  s.os = "Windows";
  s.input_resources = std::move(inputs);
  s.output_resources = std::move(outputs);
  s.available_parameters = std::move(params);
  return s;
}

TEST(WireEdges, ResourceMatchMakesAnEdge) {
  auto a = make_subtask("a", "Excel", "open and copy", {"xlsx_path"},
                        {"xlsx_in_processing", "table_in_clipboard"});
  auto b = make_subtask("b", "Excel", "export as pdf", {"xlsx_in_processing"},
                        {"pdf_path"});
  EnvironmentManifest env{{"xlsx_path"}};
  auto edges = wire_edges({a, b}, env);
  EXPECT_EQ(edges, (std::vector<Edge>{{"a", "b"}}));
}

TEST(WireEdges, DisjointResourcesNoEdges) {
  auto a = make_subtask("a", "Paint", "draw", {}, {"img_path"});
  auto b = make_subtask("b", "Spotify", "play", {}, {"audio_session"});
  EXPECT_TRUE(wire_edges({a, b}).empty());
}

TEST(WireEdges, LowestIdProducerWinsTies) {
  auto a = make_subtask("a", "Excel", "make r", {}, {"r"});
  auto b = make_subtask("b", "Excel", "also make r", {}, {"r"});
  auto c = make_subtask("c", "Excel", "use r", {"r"}, {});
  auto edges = wire_edges({a, b, c});
  EXPECT_EQ(edges, (std::vector<Edge>{{"a", "c"}}));
  // both candidate wirings are acyclic; the rule just picks one
  TaskGraph alt = TaskGraph::make({"a", "b", "c"}, {{"b", "c"}});
  EXPECT_TRUE(is_acyclic(alt));
}

TEST(WireEdges, UnsatisfiedInputUnlessEnvironmentProvided) {
  auto b = make_subtask("b", "Excel", "export", {"xlsx_in_processing"}, {});
  try {
    wire_edges({b});
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unsatisfied input"),
              std::string::npos);
    EXPECT_NE(std::string(e.what()).find("xlsx_in_processing"),
              std::string::npos);
  }
  EnvironmentManifest env{{"xlsx_in_processing"}};
  EXPECT_TRUE(wire_edges({b}, env).empty());
}

TEST(WireEdges, SeveralSharedCategoriesCollapseToOneEdge) {
  auto a = make_subtask("a", "Excel", "produce", {}, {"r1", "r2"});
  auto b = make_subtask("b", "Word", "consume", {"r1", "r2"}, {});
  TaskGraph g = TaskGraph::make({"a", "b"}, wire_edges({a, b}));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Compose, InconsistentBoundsRejected) {
  CompositionConstraint c;
  c.min_nodes = 5;
  c.max_nodes = 2;
  EXPECT_THROW(c.validate(), Error);
}


TEST(WireEdges, CycleIsAnErrorListingTheCycle) {
  auto a = make_subtask("a", "Excel", "x", {"r_b"}, {"r_a"});
  auto b = make_subtask("b", "Excel", "y", {"r_a"}, {"r_b"});
  try {
    wire_edges({a, b});
    FAIL() << "expected Error";
  } catch (const Error& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("cycle"), std::string::npos);
    EXPECT_NE(what.find("a"), std::string::npos);
    EXPECT_NE(what.find("b"), std::string::npos);
  }
}

SubtaskPool excel_pdf_pool() {
  SubtaskPool pool;
  pool.add(make_subtask(
      "25e2a51e-c019-1a9a-0747-d6fe0e9d457d", "Excel",
      "Open '{xlsx_path}', select the all data, and copy it.", {"xlsx_path"},
      {"table_in_clipboard", "xlsx_in_processing"},
      {{{"xlsx_path", "C:\\Users\\user\\Desktop\\office\\data.xlsx"}}}));
  pool.add(make_subtask(
      "df3fc68b-fa76-4e19-7da6-aef17792523b", "Excel",
      "Export the open workbook as a PDF named '{pdf_path}'.",
      {"xlsx_in_processing"}, {"pdf_path"},
      {{{"pdf_path", "C:\\Users\\user\\Desktop\\pdf\\data.pdf"}}}));
  return pool;
}

TEST(Compose, TwoChainedSubtasksUnderEasyDependency) {
  SubtaskPool pool = excel_pdf_pool();
  IntentGroup group{"Copy a table and export it",
                    {"25e2a51e-c019-1a9a-0747-d6fe0e9d457d",
                     "df3fc68b-fa76-4e19-7da6-aef17792523b"}};
  CompositionConstraint constraint;
  constraint.required_levels[Dimension::Dependency] = Level::Easy;
  constraint.min_nodes = 2;
  EnvironmentManifest env{{"xlsx_path"}};
  TaskGraph g = compose(pool, group, constraint, default_registry(), env);
  EXPECT_TRUE(validate_graph(g).empty());
  EXPECT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(g.edge_list(),
            (std::vector<Edge>{{"25e2a51e-c019-1a9a-0747-d6fe0e9d457d",
                                "df3fc68b-fa76-4e19-7da6-aef17792523b"}}));
  EXPECT_EQ(g.successful_topo.size(), 1u);
  EXPECT_FALSE(g.instruction.empty());
  EXPECT_EQ(g.intent, group.intent);
}

TEST(Compose, UnconstrainedPairWiresOpenCopyToExportPdf) {
  SubtaskPool pool = excel_pdf_pool();
  IntentGroup group{"excel to pdf",
                    {"25e2a51e-c019-1a9a-0747-d6fe0e9d457d",
                     "df3fc68b-fa76-4e19-7da6-aef17792523b"}};
  CompositionConstraint unconstrained;
  unconstrained.min_nodes = 2;
  EnvironmentManifest env{{"xlsx_path"}};
  TaskGraph g = compose(pool, group, unconstrained, default_registry(), env);
  auto edges = g.edge_list();
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].first, "25e2a51e-c019-1a9a-0747-d6fe0e9d457d");
  EXPECT_EQ(edges[0].second, "df3fc68b-fa76-4e19-7da6-aef17792523b");
}

TEST(Compose, InfeasibleConstraintCarriesClosestProfile) {
  SubtaskPool pool = excel_pdf_pool();
  IntentGroup group{"too small",
                    {"25e2a51e-c019-1a9a-0747-d6fe0e9d457d",
                     "df3fc68b-fa76-4e19-7da6-aef17792523b"}};
  CompositionConstraint constraint;
  constraint.required_levels[Dimension::Instruction] = Level::Hard;  // >=5 nodes
  EnvironmentManifest env{{"xlsx_path"}};
  try {
    compose(pool, group, constraint, default_registry(), env);
    FAIL() << "expected InfeasibleConstraintError";
  } catch (const InfeasibleConstraintError& e) {
    ASSERT_TRUE(e.closest_profile.has_value());
    EXPECT_LE(e.closest_profile->instruction.count, 2);
  }
}

TEST(Compose, MemberOutsidePoolRejected) {
  SubtaskPool pool = excel_pdf_pool();
  IntentGroup group{"broken", {"25e2a51e-c019-1a9a-0747-d6fe0e9d457d",
                               "no-such-subtask"}};
  EXPECT_THROW(compose(pool, group, CompositionConstraint{}), Error);
}

TEST(Compose, DeterministicGivenSeed) {
  SubtaskPool pool;
  for (int i = 0; i < 8; ++i) {
    std::string id = "s" + std::to_string(i);
    std::vector<std::string> in =
        i > 0 ? std::vector<std::string>{"r" + std::to_string(i - 1)}
              : std::vector<std::string>{};
    pool.add(make_subtask(id, i % 2 ? "Excel" : "Word", "step " + id, in,
                          {"r" + std::to_string(i)}));
  }
  IntentGroup group{"chain pool", {}};
  for (const auto& [id, s] : pool.subtasks()) group.members.push_back(id);
  CompositionConstraint constraint;
  constraint.required_levels[Dimension::Instruction] = Level::Medium;
  constraint.seed = 42;
  TaskGraph first = compose(pool, group, constraint);
  TaskGraph second = compose(pool, group, constraint);
  EXPECT_EQ(first, second);
}

TEST(ComposeProperty, ComposedGraphsSatisfyTheirConstraints) {
  SubtaskPool pool;
  // a lattice of producers/consumers rich enough for several profiles
  for (int i = 0; i < 10; ++i) {
    std::string id = "p" + std::to_string(i);
    std::vector<std::string> in;
    if (i >= 2) in.push_back("res" + std::to_string(i - 2));
    if (i >= 5) in.push_back("res" + std::to_string(i - 5));
    pool.add(make_subtask(id, i % 3 == 0 ? "Excel" : "Paint", "do " + id, in,
                          {"res" + std::to_string(i)}));
  }
  IntentGroup group{"lattice", {}};
  for (const auto& [id, s] : pool.subtasks()) group.members.push_back(id);

  std::vector<CompositionConstraint> constraints(3);
  constraints[0].required_levels[Dimension::Dependency] = Level::Medium;
  constraints[1].required_levels[Dimension::Instruction] = Level::Medium;
  constraints[2].required_levels[Dimension::Hierarchy] = Level::Medium;
  for (auto& c : constraints) {
    c.seed = 7;
    TaskGraph g = compose(pool, group, c);
    EXPECT_TRUE(validate_graph(g).empty());
    ComplexityProfile profile = classify(g, pool.applications());
    EXPECT_TRUE(c.satisfied_by(profile));
    for (const auto& order : g.successful_topo)
      EXPECT_TRUE(is_topological_order(g, order));
  }
}

TEST(RenderInstruction, ChainParallelDiamond) {
  TaskGraph chain = TaskGraph::make({"A", "B"}, {{"A", "B"}});
  NodeTexts texts{{"A", "open the file"}, {"B", "save it as PDF"}};
  EXPECT_EQ(render_instruction(chain, texts),
            "open the file, then save it as PDF.");

  TaskGraph isolated = TaskGraph::make({"A", "B"}, {});
  EXPECT_EQ(render_instruction(isolated, texts),
            "open the file; meanwhile, save it as PDF.");

  TaskGraph diamond = TaskGraph::make(
      {"A", "B", "C", "D"}, {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}});
  NodeTexts four{{"A", "alpha"}, {"B", "beta"}, {"C", "gamma"}, {"D", "delta"}};
  std::string text = render_instruction(diamond, four);
  std::size_t thens = 0, meanwhiles = 0, pos = 0;
  while ((pos = text.find(", then ", pos)) != std::string::npos) {
    ++thens;
    pos += 7;
  }
  pos = 0;
  while ((pos = text.find("; meanwhile, ", pos)) != std::string::npos) {
    ++meanwhiles;
    pos += 13;
  }
  EXPECT_EQ(thens, 2u);
  EXPECT_EQ(meanwhiles, 1u);
}

TEST(RenderInstruction, MissingParameterNamesPlaceholderAndNode) {
  SubtaskPool pool = excel_pdf_pool();
  TaskGraph g = TaskGraph::make({"25e2a51e-c019-1a9a-0747-d6fe0e9d457d"}, {});
  std::map<NodeId, ParameterSet> choice{
      {"25e2a51e-c019-1a9a-0747-d6fe0e9d457d", {}}};  // drops xlsx_path
  try {
    node_texts(g, pool, choice);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("xlsx_path"), std::string::npos);
    EXPECT_NE(what.find("25e2a51e"), std::string::npos);
  }
}

TEST(InferDependencies, RoundTripsTheWorkedExamples) {
  TaskGraph chain = TaskGraph::make({"A", "B"}, {{"A", "B"}});
  NodeTexts texts{{"A", "open the file"}, {"B", "save it as PDF"}};
  EXPECT_EQ(infer_dependencies(render_instruction(chain, texts), texts),
            (EdgeSet{{"A", "B"}}));

  TaskGraph isolated = TaskGraph::make({"A", "B"}, {});
  EXPECT_TRUE(
      infer_dependencies(render_instruction(isolated, texts), texts).empty());

  TaskGraph diamond = TaskGraph::make(
      {"A", "B", "C", "D"}, {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}});
  NodeTexts four{{"A", "alpha"}, {"B", "beta"}, {"C", "gamma"}, {"D", "delta"}};
  EdgeSet expected{{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}};
  EXPECT_EQ(infer_dependencies(render_instruction(diamond, four), four),
            expected);
}

TEST(InferDependencies, UnparseableTextThrows) {
  NodeTexts texts{{"A", "alpha"}};
  EXPECT_THROW(infer_dependencies("gibberish that matches nothing.", texts),
               Error);
}

TEST(ValidateConsistency, RoundTripTrueAndLinearizationFalse) {
  TaskGraph diamond = TaskGraph::make(
      {"A", "B", "C", "D"}, {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}});
  NodeTexts four{{"A", "alpha"}, {"B", "beta"}, {"C", "gamma"}, {"D", "delta"}};
  EXPECT_TRUE(
      validate_consistency(diamond, render_instruction(diamond, four), four)
          .consistent);

  // a chain rendering of the same nodes loses the parallel structure
  auto report = validate_consistency(
      diamond, render_instruction_linearized(diamond, four), four);
  EXPECT_FALSE(report.consistent);
  EXPECT_FALSE(report.missing_edges.empty());
  EXPECT_FALSE(report.extra_edges.empty());
}

TEST(ValidateConsistency, EmptyInstructionAgainstNonemptyGraph) {
  TaskGraph g = TaskGraph::make({"A"}, {});
  NodeTexts texts{{"A", "alpha"}};
  auto report = validate_consistency(g, "", texts);
  EXPECT_FALSE(report.consistent);
  EXPECT_EQ(report.missing_nodes, std::vector<NodeId>{"A"});
}

TEST(ValidateConsistency, RoundTripHoldsOnRandomDags) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    TaskGraph g = oracles::random_dag(rng, 1 + trial % 8, 0.3);
    NodeTexts texts;
    for (const auto& id : g.nodes) texts[id] = "run step " + id;
    EXPECT_TRUE(
        validate_consistency(g, render_instruction(g, texts), texts).consistent)
        << render_instruction(g, texts);
  }
}

TEST(IntentExtraction, GroupsByResourceChains) {
  SubtaskPool pool = excel_pdf_pool();
  pool.add(make_subtask("zz-solo", "Spotify", "play something", {}, {"music"}));
  ResourceChainExtractor extractor;
  auto groups = extractor.extract(pool);
  ASSERT_EQ(groups.size(), 2u);
  // the two excel subtasks share xlsx_in_processing, the spotify one is alone
  std::size_t sizes[2] = {groups[0].members.size(), groups[1].members.size()};
  EXPECT_EQ(std::max(sizes[0], sizes[1]), 2u);
  EXPECT_EQ(std::min(sizes[0], sizes[1]), 1u);
}

}  // namespace
}  // namespace taskgraph
