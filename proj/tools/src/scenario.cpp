#include <algorithm>
#include <array>
#include <chrono>
#include <future>
#include <sstream>

#include "dlim_cli/cli.hpp"

namespace dlim::cli {

namespace {

constexpr std::array<std::pair<Analysis, std::string_view>, 8> kNames{{
    {Analysis::Ml, "ml"},
    {Analysis::Length, "length"},
    {Analysis::Lim, "lim"},
    {Analysis::Decompose, "decompose"},
    {Analysis::Local, "local"},
    {Analysis::OmegaComplete, "omega_complete"},
    {Analysis::UlmProbe, "ulm_probe"},
    {Analysis::NormalForm, "normal_form"},
}};

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }

const Json& require(const Json& j, std::string_view key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError("missing key \"" + std::string(key) + "\"", path);
  return *it;
}

std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError("expected a string", path);
  return j.get<std::string>();
}

Ordinal ordinal_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Ordinal::finite(j.get<std::uint64_t>());
  try {
    return Ordinal::parse(require_string(j, path));
  } catch (const ParseError& e) {
    throw SchemaError(e.what(), path);
  }
}

WalkerInput walker_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError("expected a walker object", path);
  const Json& p = require(j, "p", path);
  if (!p.is_number_unsigned()) throw SchemaError("p must be a positive integer", child(path, "p"));
  const Ordinal alpha = ordinal_from_json(require(j, "alpha", path), child(path, "alpha"));
  std::optional<WalkerContext> ctx;
  try {
    ctx.emplace(p.get<std::uint64_t>(), alpha);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what(), path);
  }
  WalkerInput in{*ctx, {}, {}};
  if (const auto it = j.find("elements"); it != j.end()) {
    const std::string ep = child(path, "elements");
    if (!it->is_array()) throw SchemaError("expected an array", ep);
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string kp = ep + "/" + std::to_string(k);
      try {
        in.elements.push_back(WalkerElement::parse(*ctx, require_string((*it)[k], kp)));
      } catch (const ParseError& e) {
        throw SchemaError(e.what(), kp);
      } catch (const std::out_of_range& e) {
        throw SchemaError(e.what(), kp);
      }
    }
  }
  if (const auto it = j.find("samples"); it != j.end()) {
    const std::string sp = child(path, "samples");
    if (!it->is_array()) throw SchemaError("expected an array", sp);
    for (std::size_t k = 0; k < it->size(); ++k) {
      in.samples.push_back(ordinal_from_json((*it)[k], sp + "/" + std::to_string(k)));
    }
  }
  return in;
}

Status truth_status(Truth t) { return t == Truth::Unknown ? Status::Unknown : Status::Exact; }

Json walker_to_json(const WalkerInput& w) {
  Json elements = Json::array();
  for (const WalkerElement& x : w.elements) elements.push_back(x.to_string());
  Json samples = Json::array();
  for (const Ordinal& b : w.samples) samples.push_back(b.to_string());
  return Json{{"p", w.context.p()},
              {"alpha", w.context.alpha().to_string()},
              {"elements", std::move(elements)},
              {"samples", std::move(samples)}};
}

void run_tower(const Scenario& s, const Tower& tower, Report& out) {
  const ImageFiltration f(tower, s.horizon);
  const AnalysisReport r = f.report();
  const Json rj = to_json(r);
  for (Analysis a : s.analyses) {
    Item item{a, Status::Exact, Json(nullptr), std::nullopt};
    switch (a) {
      case Analysis::Ml:
        item.value = rj["ml"];
        if (std::holds_alternative<MlUnknown>(r.ml)) item.status = Status::Unknown;
        break;
      case Analysis::Length:
        item.value = rj["length"];
        if (std::holds_alternative<UnknownBeyond>(r.length)) item.status = Status::Partial;
        break;
      case Analysis::Lim: {
        item.value = Json{{"group", rj["lim"]}, {"lim1", rj["lim1"]}};
        const bool group = r.lim.has_value();
        const bool lim1 = !std::holds_alternative<Lim1Unknown>(r.lim1);
        item.status = group && lim1 ? Status::Exact : (group || lim1 ? Status::Partial : Status::Unknown);
        break;
      }
      case Analysis::Decompose:
        if (const auto d = f.decompose()) {
          item.value = Json{{"E", to_json(d->epimorphic.tower)},
                            {"E_epimorphic", d->epimorphic.tower.is_epimorphic()},
                            {"L", to_json(d->local.tower)},
                            {"L_null", d->local.tower.is_null()}};
        } else {
          item.status = Status::Unknown;
        }
        break;
      case Analysis::Local:
        item.value = rj["local"];
        item.status = truth_status(r.local);
        break;
      case Analysis::OmegaComplete:
        item.value = rj["omega_complete"];
        item.status = truth_status(r.omega_complete.complete);
        break;
      default:
        throw std::logic_error("walker analysis on a tower");
    }
    if (item.status != Status::Exact) item.horizon = s.horizon;
    out.items.push_back(std::move(item));
  }
}

void run_walker(const Scenario& s, const WalkerInput& w, Report& out) {
  for (Analysis a : s.analyses) {
    Item item{a, Status::Exact, Json::array(), std::nullopt};
    if (a == Analysis::NormalForm) {
      for (const WalkerElement& x : w.elements) {
        const WalkerElement n = normalize(x);
        item.value.push_back(Json{{"input", x.to_string()},
                                  {"normal_form", n.to_string()},
                                  {"height", height(n).to_string()},
                                  {"in_relations", n.is_zero()}});
      }
    } else if (a == Analysis::UlmProbe) {
      const UlmProbeReport probe = ulm_probe(w.context, w.samples);
      Json samples = Json::array();
      for (const UlmSample& u : probe.samples) {
        samples.push_back(Json{{"beta", u.beta.to_string()},
                               {"height", u.height.to_string()},
                               {"nonzero", u.nonzero},
                               {"exact", u.exact()}});
      }
      item.value = Json{{"samples", std::move(samples)},
                        {"alpha_stage_trivial", probe.alpha_stage_trivial},
                        {"heights_increase", probe.heights_increase},
                        {"passed", probe.passed()}};
    } else {
      throw std::logic_error("tower analysis on a walker input");
    }
    out.items.push_back(std::move(item));
  }
}

}  // namespace

std::string to_string(Analysis a) {
  for (const auto& [k, name] : kNames) {
    if (k == a) return std::string(name);
  }
  throw std::logic_error("unnamed analysis");
}

Analysis analysis_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown analysis \"" + std::string(name) + "\"");
}

bool applies_to_towers(Analysis a) { return a != Analysis::UlmProbe && a != Analysis::NormalForm; }

std::vector<Analysis> default_analyses(bool tower) {
  std::vector<Analysis> out;
  for (const auto& [a, name] : kNames) {
    if (applies_to_towers(a) == tower) out.push_back(a);
  }
  return out;
}

void validate(const Scenario& s) {
  if (s.name.empty()) throw std::invalid_argument("scenario without a name");
  for (Analysis a : s.analyses) {
    if (applies_to_towers(a) != s.is_tower()) {
      throw std::invalid_argument("analysis " + to_string(a) + " does not apply to scenario " + s.name);
    }
  }
  if (s.horizon == 0) throw std::invalid_argument("horizon must be positive");
}

Scenario scenario_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError("expected a scenario object", path);
  Scenario s{require_string(require(j, "name", path), child(path, "name")), Tower::zero(), {}, kDefaultHorizon};
  const bool has_tower = j.contains("tower");
  if (has_tower == j.contains("walker")) {
    throw SchemaError("a scenario needs exactly one of \"tower\" and \"walker\"", path);
  }
  if (has_tower) {
    s.input = tower_from_json(j["tower"], child(path, "tower"));
  } else {
    s.input = walker_from_json(j["walker"], child(path, "walker"));
  }
  if (const auto it = j.find("analyses"); it != j.end()) {
    const std::string ap = child(path, "analyses");
    if (!it->is_array()) throw SchemaError("expected an array", ap);
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string kp = ap + "/" + std::to_string(k);
      try {
        s.analyses.push_back(analysis_from_string(require_string((*it)[k], kp)));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what(), kp);
      }
    }
  } else {
    s.analyses = default_analyses(has_tower);
  }
  if (const auto it = j.find("horizon"); it != j.end()) {
    if (!it->is_number_unsigned()) throw SchemaError("horizon must be a positive integer", child(path, "horizon"));
    s.horizon = it->get<std::size_t>();
  }
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what(), path);
  }
  return s;
}

Json to_json(const Scenario& s) {
  Json analyses = Json::array();
  for (Analysis a : s.analyses) analyses.push_back(to_string(a));
  Json j{{"name", s.name}, {"analyses", std::move(analyses)}, {"horizon", s.horizon}};
  if (const Tower* t = std::get_if<Tower>(&s.input)) {
    j["tower"] = to_json(*t);
  } else {
    j["walker"] = walker_to_json(std::get<WalkerInput>(s.input));
  }
  return j;
}

std::vector<Scenario> parse_scenarios(std::string_view text) {
  const Json doc = parse_json(text);
  const Json* list = &doc;
  std::string path;
  if (doc.is_object()) {
    if (!doc.contains("scenarios")) return {scenario_from_json(doc)};
    list = &doc["scenarios"];
    path = "/scenarios";
  }
  if (!list->is_array()) throw SchemaError("expected an array of scenarios", path);
  std::vector<Scenario> out;
  for (std::size_t k = 0; k < list->size(); ++k) {
    out.push_back(scenario_from_json((*list)[k], path + "/" + std::to_string(k)));
  }
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Exact:
      return "Exact";
    case Status::Partial:
      return "Partial";
    case Status::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

const Item* Report::find(Analysis a) const {
  for (const Item& i : items) {
    if (i.analysis == a) return &i;
  }
  return nullptr;
}

Report run_scenario(const Scenario& s) {
  validate(s);
  const auto start = std::chrono::steady_clock::now();
  Report out{s.name, {}, 0};
  if (const Tower* t = std::get_if<Tower>(&s.input)) {
    run_tower(s, *t, out);
  } else {
    run_walker(s, std::get<WalkerInput>(s.input), out);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<Report> run_scenarios(const std::vector<Scenario>& scenarios) {
  std::vector<std::future<Report>> jobs;
  jobs.reserve(scenarios.size());
  for (const Scenario& s : scenarios) {
    jobs.push_back(std::async(std::launch::async, [&s] { return run_scenario(s); }));
  }
  std::vector<Report> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  std::stable_sort(out.begin(), out.end(),
                   [](const Report& a, const Report& b) { return a.scenario < b.scenario; });
  return out;
}

Json to_json(const Report& r) {
  Json results = Json::object();
  for (const Item& i : r.items) {
    Json item{{"status", to_string(i.status)}, {"value", i.value}};
    if (i.horizon) item["horizon"] = *i.horizon;
    results[to_string(i.analysis)] = std::move(item);
  }
  return Json{{"scenario", r.scenario}, {"results", std::move(results)}};
}

Json run_document(const std::vector<Report>& reports) {
  Json list = Json::array();
  for (const Report& r : reports) list.push_back(to_json(r));
  return Json{{"schema_version", kSchemaVersion}, {"reports", std::move(list)}};
}

namespace {

std::string brief(const Item& i) {
  const Json& v = i.value;
  switch (i.analysis) {
    case Analysis::Ml:
      if (v["kind"] == "Stabilized") return "Stabilized(" + v["stage"].dump() + ")";
      return v["kind"].get<std::string>();
    case Analysis::Length:
      if (v["kind"] == "Exact") return v["value"].get<std::string>();
      return "> " + v["bound"].get<std::string>();
    case Analysis::Lim: {
      const std::string g = v["group"].is_null() ? "?" : v["group"]["text"].get<std::string>();
      return g + ", lim1 " + v["lim1"]["kind"].get<std::string>();
    }
    case Analysis::Decompose:
      if (v.is_null()) return "undecided";
      return std::string("E ") + (v["E_epimorphic"].get<bool>() ? "epimorphic" : "NOT epimorphic") +
             (v["L_null"].get<bool>() ? ", L null" : ", L local");
    case Analysis::Local:
    case Analysis::OmegaComplete:
      return v["value"].get<std::string>();
    case Analysis::UlmProbe:
      return std::string(v["passed"].get<bool>() ? "passed" : "FAILED") + " on " +
             std::to_string(v["samples"].size()) + " samples";
    case Analysis::NormalForm: {
      std::string out;
      for (const Json& e : v) {
        if (!out.empty()) out += "; ";
        out += e["normal_form"].get<std::string>();
      }
      return out.empty() ? "(no elements)" : out;
    }
  }
  return "";
}

}  // namespace

std::string summary(const Report& r) {
  std::ostringstream os;
  os << r.scenario << "\n";
  for (const Item& i : r.items) {
    os << "  " << to_string(i.analysis) << ": " << brief(i);
    if (i.status != Status::Exact) os << " [" << to_string(i.status) << ", horizon " << *i.horizon << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace dlim::cli
