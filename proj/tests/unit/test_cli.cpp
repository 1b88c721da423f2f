#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dlim_cli/cli.hpp"

namespace cli = dlim::cli;
using dlim::Json;

namespace {

std::string data(const char* name) { return std::string(DLIM_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const std::string cmd = std::string(DLIM_EXE) + " " + args + " >" + stdout_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path temp(const char* name) {
  return std::filesystem::temp_directory_path() / ("dlim_test_cli_" + std::to_string(::getpid()) + "_" + name);
}

cli::Scenario tower(const char* name, dlim::Tower t) {
  return cli::Scenario{name, std::move(t), cli::default_analyses(true), dlim::kDefaultHorizon};
}

Json result(const cli::Report& r, cli::Analysis a) {
  const cli::Item* i = r.find(a);
  return i ? i->value : Json();
}

}  // namespace

TEST(Scenario, AnalysisNames) {
  for (bool t : {true, false}) {
    for (cli::Analysis a : cli::default_analyses(t)) {
      EXPECT_EQ(cli::analysis_from_string(cli::to_string(a)), a);
      EXPECT_EQ(cli::applies_to_towers(a), t);
    }
  }
  EXPECT_EQ(cli::default_analyses(true).size() + cli::default_analyses(false).size(), 8u);
  EXPECT_THROW(cli::analysis_from_string("lim2"), std::invalid_argument);
}

TEST(Scenario, ValidationMatchesInputKind) {
  cli::Scenario s = tower("t", dlim::Tower::zero());
  EXPECT_NO_THROW(cli::validate(s));
  s.analyses.push_back(cli::Analysis::UlmProbe);
  EXPECT_THROW(cli::validate(s), std::invalid_argument);
  EXPECT_THROW(cli::run_scenario(s), std::invalid_argument);
}

TEST(Scenario, ParseForms) {
  EXPECT_TRUE(cli::parse_scenarios(R"({"scenarios": []})").empty());
  EXPECT_TRUE(cli::parse_scenarios("[]").empty());
  const auto one = cli::parse_scenarios(R"({"name": "z", "tower": {"tail": {"kind": "zero"}}})");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].analyses, cli::default_analyses(true));

  const auto file = cli::parse_scenarios(slurp(data("scenarios.json")));
  ASSERT_EQ(file.size(), 3u);
  EXPECT_EQ(file[0].analyses.size(), 3u);
  EXPECT_FALSE(file[1].is_tower());
  EXPECT_EQ(file[2].horizon, 2u);
}

TEST(Scenario, SchemaErrorsPointIntoTheFile) {
  const auto path = [](const char* text) {
    try {
      cli::parse_scenarios(text);
    } catch (const dlim::SchemaError& e) {
      return e.path();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(path(R"({"scenarios": [{"name": "a", "tower": {"tail": {"kind": "zero"}}, "analyses": ["ml", "x"]}]})"),
            "/scenarios/0/analyses/1");
  EXPECT_EQ(path(R"([{"name": "a"}])"), "/0");
  EXPECT_EQ(path(R"([{"name": "a", "walker": {"p": 4, "alpha": "w"}}])"), "/0/walker");
  EXPECT_EQ(path(R"([{"name": "a", "walker": {"p": 2, "alpha": "w", "elements": ["e[w]"]}}])"),
            "/0/walker/elements/0");
  EXPECT_EQ(path(R"([{"name": "a", "tower": {"tail": {"kind": "zero"}}, "analyses": ["normal_form"]}])"), "/0");
  EXPECT_THROW(cli::parse_scenarios(slurp(data("bad_syntax.json"))), dlim::ParseError);
}

TEST(Scenario, JsonRoundTrip) {
  for (const cli::Example& e : cli::example_corpus()) {
    const Json j = cli::to_json(e.scenario);
    const cli::Scenario back = cli::scenario_from_json(j);
    EXPECT_EQ(back.name, e.scenario.name);
    EXPECT_EQ(back.analyses, e.scenario.analyses);
    EXPECT_EQ(cli::to_json(back), j);
  }
}

TEST(RunScenario, SOfZ6) {
  const cli::Report r = cli::run_scenario(tower("s6", dlim::Tower::s_of_a(dlim::FgAbGroup::cyclic(6), 2)));
  EXPECT_EQ(result(r, cli::Analysis::Ml), (Json{{"kind", "Stabilized"}, {"stage", 1}}));
  EXPECT_EQ(result(r, cli::Analysis::Lim)["group"]["invariant_factors"], Json::array({3}));
  EXPECT_EQ(result(r, cli::Analysis::Local)["value"], "false");
  const Json d = result(r, cli::Analysis::Decompose);
  EXPECT_EQ(d["E"]["tail"]["group"]["invariant_factors"], Json::array({3}));
  EXPECT_TRUE(d["E_epimorphic"].get<bool>());
  EXPECT_TRUE(d["L_null"].get<bool>());
  for (const cli::Item& i : r.items) EXPECT_EQ(i.status, cli::Status::Exact);
}

TEST(RunScenario, SOfZ) {
  const cli::Report r = cli::run_scenario(tower("z", dlim::Tower::s_of_a(dlim::FgAbGroup::free(1), 2)));
  EXPECT_EQ(result(r, cli::Analysis::Ml)["kind"], "NeverStabilizes");
  EXPECT_EQ(result(r, cli::Analysis::Lim)["group"], (Json{{"free_rank", 0}, {"invariant_factors", Json::array()},
                                                          {"text", "0"}}));
  EXPECT_EQ(result(r, cli::Analysis::Lim)["lim1"]["kind"], "NonZero");
  EXPECT_EQ(result(r, cli::Analysis::OmegaComplete)["value"], "false");
}

TEST(RunScenario, UnknownItemsCarryTheHorizon) {
  cli::Scenario s = tower("short", dlim::Tower::s_of_a(dlim::FgAbGroup::cyclic(64), 2));
  s.horizon = 2;
  const cli::Report r = cli::run_scenario(s);
  std::size_t undecided = 0;
  for (const cli::Item& i : r.items) {
    if (i.status == cli::Status::Exact) continue;
    ++undecided;
    ASSERT_TRUE(i.horizon.has_value()) << cli::to_string(i.analysis);
    EXPECT_EQ(*i.horizon, 2u);
    EXPECT_EQ(cli::to_json(r)["results"][cli::to_string(i.analysis)]["horizon"], 2);
  }
  EXPECT_GE(undecided, 3u);
}

TEST(RunScenario, WalkerItems) {
  const auto scenarios = cli::parse_scenarios(slurp(data("scenarios.json")));
  const cli::Report r = cli::run_scenario(scenarios[1]);
  const Json nf = result(r, cli::Analysis::NormalForm);
  EXPECT_EQ(nf[0]["normal_form"], "1*e[1]");
  EXPECT_EQ(nf[1]["height"], "4");
  const Json probe = result(r, cli::Analysis::UlmProbe);
  EXPECT_TRUE(probe["passed"].get<bool>());
  for (const Json& s : probe["samples"]) EXPECT_EQ(s["height"], s["beta"]);
}

TEST(RunScenarios, SortedAndDeterministic) {
  auto scenarios = cli::parse_scenarios(slurp(data("scenarios.json")));
  const auto a = cli::run_scenarios(scenarios);
  std::reverse(scenarios.begin(), scenarios.end());
  const auto b = cli::run_scenarios(scenarios);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                             [](const cli::Report& x, const cli::Report& y) { return x.scenario < y.scenario; }));
  EXPECT_EQ(cli::run_document(a).dump(), cli::run_document(b).dump());
  EXPECT_EQ(cli::run_document({}).at("reports"), Json::array());
}

TEST(Suites, ExampleCorpusPasses) {
  const cli::SuiteReport r = cli::run_suite("paper-examples");
  EXPECT_TRUE(r.passed()) << cli::summary(r);
  EXPECT_GE(r.reports.size(), 12u);
  EXPECT_GE(cli::example_corpus().size(), 12u);
}

TEST(Suites, PropertySuiteIsDeterministic) {
  const cli::SuiteReport a = cli::run_suite("property-suite", 5);
  const cli::SuiteReport b = cli::run_suite("property-suite", 5);
  EXPECT_TRUE(a.passed()) << cli::summary(a);
  EXPECT_EQ(cli::to_json(a).dump(), cli::to_json(b).dump());
  EXPECT_EQ(cli::to_json(a)["seed"], 5);
}

TEST(Suites, UnknownName) {
  EXPECT_THROW(cli::run_suite("paper-exampels"), cli::UnknownSuite);
  EXPECT_EQ(cli::suite_names().size(), 2u);
}

TEST(Executable, ExitCodes) {
  EXPECT_EQ(run("suite paper-examples"), 0);
  EXPECT_EQ(run("suite property-suite --seed 1"), 0);
  EXPECT_EQ(run("suite no-such-suite"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("analyze"), 2);
  EXPECT_EQ(run("analyze " + data("does_not_exist.json")), 2);
  EXPECT_EQ(run("analyze " + data("bad_syntax.json")), 2);
  EXPECT_EQ(run("walker height --p 4 --alpha w e[0]"), 2);
  EXPECT_EQ(run("walker normalize --p 3 --alpha w 'e[w]'"), 2);
  EXPECT_EQ(run("walker ulm-probe --p 2 --alpha 'w*2+3' 0 5 w"), 0);
  EXPECT_EQ(run("snf " + data("matrix.json")), 0);
}

TEST(Executable, ReportsAreByteIdentical) {
  const auto out1 = temp("a.json");
  const auto out2 = temp("b.json");
  for (const char* file : {"s_of_z6.json", "two_level.json", "scenarios.json"}) {
    ASSERT_EQ(run("analyze " + data(file) + " --out " + out1.string()), 0) << file;
    ASSERT_EQ(run("analyze " + data(file) + " --json", out2.string()), 0) << file;
    EXPECT_EQ(slurp(out1.string()), slurp(out2.string())) << file;
    EXPECT_EQ(dlim::parse_json(slurp(out1.string()))["schema_version"], cli::kSchemaVersion);
  }
  ASSERT_EQ(run("suite property-suite --seed 9 --json", out1.string()), 0);
  ASSERT_EQ(run("suite property-suite --seed 9 --json", out2.string()), 0);
  EXPECT_EQ(slurp(out1.string()), slurp(out2.string()));
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}

TEST(Executable, AnalyzeAndSnfContent) {
  const auto out = temp("c.json");
  ASSERT_EQ(run("analyze " + data("two_level.json") + " --json", out.string()), 0);
  const Json doc = dlim::parse_json(slurp(out.string()));
  const Json& res = doc["reports"][0]["results"];
  EXPECT_EQ(doc["reports"][0]["scenario"], "two_level");
  EXPECT_EQ(res["length"]["value"]["value"], "2");
  EXPECT_EQ(res["local"]["value"]["value"], "true");

  ASSERT_EQ(run("snf " + data("matrix.json") + " --json", out.string()), 0);
  const Json snf = dlim::parse_json(slurp(out.string()));
  EXPECT_EQ(snf["diagonal"], Json::array({2, 6, 12}));
  EXPECT_TRUE(snf["certified"].get<bool>());
  std::filesystem::remove(out);
}
