#pragma once

// Batch front-end for dlim: scenarios in, JSON reports out.
//
// A scenario file is one scenario object, an array of them, or
// {"schema_version": 1, "scenarios": [...]}. A scenario is
//
//   {"name": "...", "tower": <tower>, "analyses": ["ml", "lim", ...], "horizon": 64}
//   {"name": "...", "walker": {"p": 2, "alpha": "w*2+3",
//                              "elements": ["3*e[0,1]"], "samples": ["0", "w"]},
//    "analyses": ["normal_form", "ulm_probe"]}
//
// Omitting "analyses" requests everything that applies to the input.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlim/dlim.hpp"

namespace dlim::cli {

inline constexpr int kSchemaVersion = 1;

enum class Analysis { Ml, Length, Lim, Decompose, Local, OmegaComplete, UlmProbe, NormalForm };

std::string to_string(Analysis a);
/// Throws std::invalid_argument for an unknown name.
Analysis analysis_from_string(std::string_view name);
bool applies_to_towers(Analysis a);

struct WalkerInput {
  WalkerContext context;
  std::vector<WalkerElement> elements;
  std::vector<Ordinal> samples;
};

struct Scenario {
  std::string name;
  std::variant<Tower, WalkerInput> input;
  std::vector<Analysis> analyses;
  std::size_t horizon = kDefaultHorizon;

  bool is_tower() const { return std::holds_alternative<Tower>(input); }
};

/// Every analysis valid for the input kind.
std::vector<Analysis> default_analyses(bool tower);
/// Throws std::invalid_argument when an analysis does not fit the input.
void validate(const Scenario& s);

Scenario scenario_from_json(const Json& j, const std::string& path = "");
Json to_json(const Scenario& s);
std::vector<Scenario> parse_scenarios(std::string_view text);

enum class Status { Exact, Partial, Unknown };
std::string to_string(Status s);

struct Item {
  Analysis analysis;
  Status status = Status::Exact;
  Json value;
  /// Present whenever status is not Exact.
  std::optional<std::size_t> horizon;
};

struct Report {
  std::string scenario;
  std::vector<Item> items;
  double seconds = 0;

  const Item* find(Analysis a) const;
};

Report run_scenario(const Scenario& s);
/// Reports sorted by scenario name; scenarios run concurrently.
std::vector<Report> run_scenarios(const std::vector<Scenario>& scenarios);

/// Timing is left out so that equal inputs give byte-identical documents.
Json to_json(const Report& r);
Json run_document(const std::vector<Report>& reports);
std::string summary(const Report& r);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Report> reports;
  std::vector<Check> checks;

  bool passed() const;
};

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> suite_names();
/// The fixed corpus run by the "paper-examples" suite, with the expected
/// values each report is checked against (JSON pointer, expected value).
struct Expectation {
  std::string pointer;
  Json value;
};
struct Example {
  Scenario scenario;
  std::vector<Expectation> expect;
};
std::vector<Example> example_corpus();

/// Throws UnknownSuite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = 0);
Json to_json(const SuiteReport& r);
std::string summary(const SuiteReport& r);

}  // namespace dlim::cli
