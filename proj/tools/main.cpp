#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dlim_cli/cli.hpp"

namespace {

using dlim::Json;
namespace cli = dlim::cli;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Output {
  bool json = false;
  std::string out;

  // JSON to stdout with --json, the summary otherwise; --out also writes the
  // JSON document to a file.
  void emit(const Json& doc, const std::string& human) const {
    const std::string text = doc.dump(2) + "\n";
    if (json) {
      std::cout << text;
    } else {
      std::cout << human;
    }
    if (!out.empty()) {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw UsageError("cannot write " + out);
      f << text;
    }
  }
};

bool is_scenario_document(const Json& j) {
  return j.is_array() || (j.is_object() && (j.contains("scenarios") || j.contains("name")));
}

int analyze(const std::string& file, std::optional<std::size_t> horizon, const Output& output) {
  const std::string text = read_file(file);
  std::vector<cli::Scenario> scenarios;
  if (is_scenario_document(dlim::parse_json(text))) {
    scenarios = cli::parse_scenarios(text);
    if (horizon) {
      for (auto& s : scenarios) s.horizon = *horizon;
    }
  } else {
    scenarios.push_back(cli::Scenario{std::filesystem::path(file).stem().string(), dlim::parse_tower(text),
                                      cli::default_analyses(true), horizon.value_or(dlim::kDefaultHorizon)});
  }
  const auto reports = cli::run_scenarios(scenarios);
  std::string human;
  for (const auto& r : reports) human += cli::summary(r);
  if (reports.empty()) human = "no scenarios\n";
  output.emit(cli::run_document(reports), human);
  return kOk;
}

dlim::WalkerContext context(std::uint64_t p, const std::string& alpha) {
  try {
    return dlim::WalkerContext(p, dlim::Ordinal::parse(alpha));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int walker(const std::string& command, std::uint64_t p, const std::string& alpha,
           const std::vector<std::string>& args, std::uint64_t seed, const Output& output) {
  cli::WalkerInput in{context(p, alpha), {}, {}};
  cli::Scenario s{"walker " + command, in, {}, dlim::kDefaultHorizon};
  auto& input = std::get<cli::WalkerInput>(s.input);
  if (command == "ulm-probe") {
    for (const auto& b : args) input.samples.push_back(dlim::Ordinal::parse(b));
    if (input.samples.empty()) {
      std::mt19937_64 rng(seed);
      for (int k = 0; k < 5; ++k) input.samples.push_back(dlim::random_ordinal_below(input.context.alpha(), rng));
    }
    s.analyses = {cli::Analysis::UlmProbe};
  } else {
    for (const auto& e : args) input.elements.push_back(dlim::WalkerElement::parse(input.context, e));
    s.analyses = {cli::Analysis::NormalForm};
  }
  const cli::Report r = cli::run_scenario(s);
  const Json& value = r.items.front().value;
  std::ostringstream human;
  if (command == "ulm-probe") {
    for (const Json& u : value["samples"]) {
      human << "beta " << u["beta"].get<std::string>() << ": height " << u["height"].get<std::string>()
            << (u["exact"].get<bool>() ? "" : "  MISMATCH") << "\n";
    }
    human << "p^alpha D' = 0: " << (value["alpha_stage_trivial"].get<bool>() ? "yes" : "NO")
          << ", heights increase: " << (value["heights_increase"].get<bool>() ? "yes" : "NO") << "\n";
  } else {
    for (const Json& e : value) {
      human << (command == "height" ? e["height"] : e["normal_form"]).get<std::string>() << "\n";
    }
  }
  output.emit(cli::run_document({r}), human.str());
  if (command == "ulm-probe" && !value["passed"].get<bool>()) return kFailed;
  return kOk;
}

int snf(const std::string& file, const Output& output) {
  Json j = dlim::parse_json(read_file(file));
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  const dlim::IntMatrix m = dlim::matrix_from_json(j, "/matrix");
  const dlim::SmithForm s = dlim::smith_normal_form(m);
  const auto unimodular = [](const dlim::IntMatrix& u) {
    const dlim::Integer d = u.determinant();
    return d == 1 || d == -1;
  };
  const bool certified = s.U * m * s.V == s.D && unimodular(s.U) && unimodular(s.V);
  Json doc = dlim::to_json(s);
  doc["schema_version"] = cli::kSchemaVersion;
  doc["certified"] = certified;
  std::ostringstream human;
  human << "diagonal: " << doc["diagonal"].dump() << "\n"
        << "certificate U*M*V = D: " << (certified ? "ok" : "FAILED") << "\n";
  output.emit(doc, human.str());
  return certified ? kOk : kFailed;
}

int suite(const std::string& name, std::uint64_t seed, const Output& output) {
  const cli::SuiteReport r = cli::run_suite(name, seed);
  output.emit(cli::to_json(r), cli::summary(r));
  return r.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived limits of towers of abelian groups and Walker's groups D'"};
  app.require_subcommand(1);

  Output output;
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 0;
  const auto add_output = [&](CLI::App* sub) {
    sub->add_flag("--json", output.json, "Print the JSON report instead of the summary");
    sub->add_option("--out", output.out, "Also write the JSON report to this file");
  };

  std::string tower_file;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze a tower or a scenario file");
  analyze_cmd->add_option("file", tower_file, "Tower or scenario JSON")->required();
  analyze_cmd->add_option("--horizon", horizon, "Iteration horizon for undecided filtrations");
  add_output(analyze_cmd);

  std::uint64_t p = 2;
  std::string alpha = "w";
  std::vector<std::string> walker_args;
  std::string walker_command;
  CLI::App* walker_cmd = app.add_subcommand("walker", "Computations in D'_alpha");
  walker_cmd->require_subcommand(1);
  for (const char* name : {"normalize", "height", "ulm-probe"}) {
    CLI::App* sub = walker_cmd->add_subcommand(name);
    sub->add_option("--p", p, "Prime")->required();
    sub->add_option("--alpha", alpha, "Ordinal alpha, e.g. \"w*2+3\"")->required();
    if (std::string(name) == "ulm-probe") {
      sub->add_option("betas", walker_args, "Ordinals beta < alpha (default: 5 random samples)");
      sub->add_option("--seed", seed, "Seed for random samples");
    } else {
      sub->add_option("elements", walker_args, "Elements such as \"3*e[0,1] + e[w]\"")->required();
    }
    add_output(sub);
    sub->callback([&walker_command, name] { walker_command = name; });
  }

  std::string matrix_file;
  CLI::App* snf_cmd = app.add_subcommand("snf", "Smith normal form with certificate");
  snf_cmd->add_option("file", matrix_file, "Matrix JSON")->required();
  add_output(snf_cmd);

  std::string suite_name;
  CLI::App* suite_cmd = app.add_subcommand("suite", "Run a verification suite");
  suite_cmd->add_option("name", suite_name, "paper-examples or property-suite")->required();
  suite_cmd->add_option("--seed", seed, "Seed for randomized suites");
  add_output(suite_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(tower_file, horizon, output);
    if (walker_cmd->parsed()) return walker(walker_command, p, alpha, walker_args, seed, output);
    if (snf_cmd->parsed()) return snf(matrix_file, output);
    if (suite_cmd->parsed()) return suite(suite_name, seed, output);
  } catch (const dlim::CapExceeded& e) {
    std::cerr << "error: enumeration cap exceeded: " << e.what() << "\n";
    return kFailed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dlim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
