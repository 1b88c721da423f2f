#include <algorithm>
#include <random>
#include <sstream>

#include "dlim_cli/cli.hpp"

namespace dlim::cli {

namespace {

FgAbGroup z(long n) { return FgAbGroup::cyclic(n); }

Scenario tower_scenario(std::string name, Tower t, std::vector<Analysis> analyses = default_analyses(true)) {
  return Scenario{std::move(name), std::move(t), std::move(analyses), kDefaultHorizon};
}

Scenario walker_scenario(std::string name, std::uint64_t p, const char* alpha, std::vector<const char*> elements,
                         std::vector<const char*> samples) {
  WalkerInput in{WalkerContext(p, Ordinal::parse(alpha)), {}, {}};
  for (const char* e : elements) in.elements.push_back(WalkerElement::parse(in.context, e));
  for (const char* b : samples) in.samples.push_back(Ordinal::parse(b));
  std::vector<Analysis> analyses;
  if (!elements.empty()) analyses.push_back(Analysis::NormalForm);
  if (!samples.empty()) analyses.push_back(Analysis::UlmProbe);
  return Scenario{std::move(name), std::move(in), std::move(analyses), kDefaultHorizon};
}

Json group(std::size_t rank, std::vector<long> factors) {
  return Json{{"free_rank", rank}, {"invariant_factors", factors}};
}

// Expectations on the common tower fields.
std::vector<Expectation> tower_facts(Json ml, const char* length, std::optional<Json> lim, const char* lim1,
                                     const char* local) {
  std::vector<Expectation> out;
  for (auto& [key, value] : ml.items()) out.push_back({"/results/ml/value/" + key, value});
  out.push_back({"/results/length/value/value", length});
  if (lim) {
    out.push_back({"/results/lim/value/group/free_rank", (*lim)["free_rank"]});
    out.push_back({"/results/lim/value/group/invariant_factors", (*lim)["invariant_factors"]});
  }
  out.push_back({"/results/lim/value/lim1/kind", lim1});
  out.push_back({"/results/local/value/value", local});
  return out;
}

Json stabilized(std::size_t n) { return Json{{"kind", "Stabilized"}, {"stage", n}}; }
Json never() { return Json{{"kind", "NeverStabilizes"}}; }

// Two-level tower Z/4 <-(x2)- Z/4 <- 0 <- 0 ...
Tower two_level() {
  return Tower({z(4), z(4)}, {GroupMap::multiplication(z(4), 2)}, ZeroTail{});
}

std::vector<Expectation> plus(std::vector<Expectation> a, std::vector<Expectation> b) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  return a;
}

// ---- Random data for the property suite -------------------------------------

using Rng = std::mt19937_64;

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

FgAbGroup random_group(Rng& rng, std::uint64_t max_order) {
  while (true) {
    std::vector<Integer> factors;
    std::uint64_t order = 1;
    std::uint64_t d = uniform(rng, 2, 6);
    const std::size_t k = uniform(rng, 0, 2);
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) d *= uniform(rng, 1, 2);
      factors.emplace_back(static_cast<unsigned long>(d));
      order *= d;
    }
    if (order <= max_order) return FgAbGroup(0, std::move(factors));
  }
}

// Generator j of order d goes to (e / gcd(e, d)) * y for a random y, where e
// is the exponent of the target; that is always killed by d.
GroupMap random_map(Rng& rng, const FgAbGroup& from, const FgAbGroup& to) {
  const Integer e = to.torsion_exponent();
  std::vector<Vector> columns;
  for (std::size_t j = 0; j < from.num_generators(); ++j) {
    Vector y(to.num_generators());
    for (std::size_t k = 0; k < y.size(); ++k) {
      y[k] = static_cast<unsigned long>(uniform(rng, 0, to.generator_order(k).get_ui() - 1));
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), from.generator_order(j).get_mpz_t());
    columns.push_back(to.reduce(to.scale(e / g, y)));
  }
  return GroupMap(from, to, IntMatrix::from_columns(columns, to.num_generators()));
}

Tower assemble(Rng& rng, std::vector<FgAbGroup> prefix, const FgAbGroup& tail, std::optional<GroupMap> endo) {
  std::vector<GroupMap> maps;
  for (std::size_t i = 1; i < prefix.size(); ++i) maps.push_back(random_map(rng, prefix[i], prefix[i - 1]));
  if (!endo) endo = random_map(rng, tail, tail);
  std::optional<GroupMap> connection;
  if (!prefix.empty()) connection = random_map(rng, tail, prefix.back());
  return Tower(std::move(prefix), std::move(maps), ConstantEndoTail{tail, *endo}, connection);
}

std::vector<FgAbGroup> random_prefix(Rng& rng, std::size_t max_prefix, std::uint64_t max_order) {
  std::vector<FgAbGroup> prefix(uniform(rng, 0, max_prefix));
  for (FgAbGroup& g : prefix) g = random_group(rng, max_order);
  return prefix;
}

Tower random_tower(Rng& rng, std::size_t max_prefix, std::uint64_t max_order) {
  auto prefix = random_prefix(rng, max_prefix, max_order);
  return assemble(rng, std::move(prefix), random_group(rng, max_order), std::nullopt);
}

// Zero tail, or multiplication by a multiple of p on Z/p^k.
Tower random_local(Rng& rng, std::size_t max_prefix, std::uint64_t max_order) {
  auto prefix = random_prefix(rng, max_prefix, max_order);
  if (uniform(rng, 0, 1) == 0) return assemble(rng, std::move(prefix), FgAbGroup(), std::nullopt);
  const unsigned long p = uniform(rng, 0, 1) == 0 ? 2 : 3;
  Integer q = p;
  while (q * p <= max_order && uniform(rng, 0, 1) == 1) q *= p;
  const FgAbGroup tail = FgAbGroup::cyclic(q);
  return assemble(rng, std::move(prefix), tail,
                  GroupMap::multiplication(tail, p * static_cast<unsigned long>(uniform(rng, 1, 3))));
}

Tower random_null(Rng& rng, std::size_t max_prefix, std::uint64_t max_order) {
  auto prefix = random_prefix(rng, max_prefix, max_order);
  std::vector<GroupMap> maps;
  for (std::size_t i = 1; i < prefix.size(); ++i) maps.push_back(GroupMap::zero(prefix[i], prefix[i - 1]));
  const FgAbGroup tail = random_group(rng, max_order);
  std::optional<GroupMap> connection;
  if (!prefix.empty()) connection = GroupMap::zero(tail, prefix.back());
  return Tower(std::move(prefix), std::move(maps), ConstantEndoTail{tail, GroupMap::zero(tail, tail)}, connection);
}

DegLexIndex random_index(Rng& rng, const Ordinal& bound) {
  std::size_t n = uniform(rng, 1, 4);
  if (const auto finite = bound.as_finite()) n = std::min<std::size_t>(n, *finite);
  std::vector<Ordinal> e;
  while (e.size() < n) {
    e.push_back(random_ordinal_below(bound, rng));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return DegLexIndex(std::move(e));
}

WalkerElement random_element(Rng& rng, const WalkerContext& ctx) {
  WalkerElement::Support s;
  const long bound = static_cast<long>(ctx.p() * ctx.p() * ctx.p());
  const std::size_t k = uniform(rng, 0, 6);
  for (std::size_t i = 0; i < k; ++i) {
    s[random_index(rng, ctx.alpha())] += std::uniform_int_distribution<long>(-bound, bound)(rng);
  }
  return WalkerElement(ctx, std::move(s));
}

// ---- Property checks --------------------------------------------------------

class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++cases_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }

  Check finish() const {
    std::string detail = std::to_string(cases_) + " cases, " + std::to_string(failures_) + " failures";
    if (!first_.empty()) detail += "; first: " + first_;
    return Check{name_, failures_ == 0 && cases_ > 0, detail};
  }

 private:
  std::string name_;
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

bool unimodular(const IntMatrix& m) {
  const Integer d = m.determinant();
  return d == 1 || d == -1;
}

Check snf_certificates(Rng& rng) {
  Tally t("snf-certificates");
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m(uniform(rng, 1, 5), uniform(rng, 1, 5));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = std::uniform_int_distribution<long>(-20, 20)(rng);
    }
    const SmithForm s = smith_normal_form(m);
    bool chain = s.D.is_diagonal();
    for (std::size_t i = 0; chain && i < std::min(m.rows(), m.cols()); ++i) {
      const Integer next = s.diagonal(i + 1);
      chain = s.diagonal(i) >= 0 && (next == 0 || (s.diagonal(i) != 0 && next % s.diagonal(i) == 0));
    }
    t.expect(s.U * m * s.V == s.D && unimodular(s.U) && unimodular(s.V) && chain, m.to_string());
  }
  return t.finish();
}

Check finite_towers_are_ml(Rng& rng) {
  Tally t("finite-towers-ml");
  for (int trial = 0; trial < 60; ++trial) {
    const Tower s = random_tower(rng, 4, 64);
    const AnalysisReport r = analyze(s);
    t.expect(std::holds_alternative<Stabilized>(r.ml) && std::holds_alternative<Lim1Zero>(r.lim1) && r.lim,
             print_tower(s));
  }
  return t.finish();
}

Check shift_invariance(Rng& rng) {
  Tally t("shift-invariance");
  std::vector<Tower> towers{Tower::s_of_a(z(6), 2), Tower::s_of_a(FgAbGroup::free(1), 2),
                            Tower::s_of_a(FgAbGroup(1, {4}), 2)};
  for (int trial = 0; trial < 60; ++trial) towers.push_back(random_tower(rng, 4, 64));
  for (const Tower& s : towers) {
    const AnalysisReport a = analyze(s);
    const AnalysisReport b = analyze(shift(s).shifted);
    t.expect(ml_kind(a.ml) == ml_kind(b.ml) && lim1_kind(a.lim1) == lim1_kind(b.lim1) && a.lim == b.lim &&
                 a.local == b.local && a.omega_complete.complete == b.omega_complete.complete,
             print_tower(s));
  }
  return t.finish();
}

Check null_extensions_local(Rng& rng) {
  Tally t("null-extension-locality");
  for (int trial = 0; trial < 40; ++trial) {
    const Tower s = random_local(rng, 3, 32);
    const Tower n = random_null(rng, 3, 16);
    const std::size_t w = std::max(s.prefix_length(), n.prefix_length());
    std::vector<GroupMap> psi;
    for (std::size_t i = 0; i <= w; ++i) psi.push_back(random_map(rng, s.level(i + 1), n.level(i)));
    t.expect(is_local(null_extension(s, n, psi)) == Truth::True, print_tower(s));
  }
  return t.finish();
}

Check products_local(Rng& rng) {
  Tally t("products-locality");
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Tower> family;
    const std::size_t k = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < k; ++i) family.push_back(random_local(rng, 3, 16));
    t.expect(is_local(limit_of_towers(family)) == Truth::True, print_tower(family.front()));
  }
  return t.finish();
}

Check walker_normal_form(Rng& rng) {
  Tally t("walker-normal-form");
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (const char* alpha : {"w", "w*2+3"}) {
      const WalkerContext ctx(p, Ordinal::parse(alpha));
      for (int trial = 0; trial < 100; ++trial) {
        const WalkerElement x = random_element(rng, ctx);
        const WalkerElement n = normalize(x);
        bool digits = n.is_normalized();
        for (const auto& [index, c] : n.support()) digits = digits && c >= 1 && c < static_cast<unsigned long>(p);
        const WalkerElement r = relation(ctx, random_index(rng, ctx.alpha()));
        WalkerElement::Support shifted = x.support();
        for (const auto& [index, c] : r.support()) shifted[index] += c;
        const bool invariant = normalize(WalkerElement(ctx, std::move(shifted))) == n;
        const bool leading = n.is_zero() || *n.leading_index() <= *x.leading_index();
        t.expect(digits && normalize(n) == n && invariant && leading, x.to_string());
      }
    }
  }
  return t.finish();
}

Check ulm_lengths(Rng& rng) {
  Tally t("ulm-probe");
  for (const char* alpha : {"1", "5", "w", "w+3", "w*2", "w*2+3"}) {
    for (std::uint64_t p : {2u, 3u}) {
      const WalkerContext ctx(p, Ordinal::parse(alpha));
      std::vector<Ordinal> samples;
      for (int k = 0; k < 5; ++k) samples.push_back(random_ordinal_below(ctx.alpha(), rng));
      const UlmProbeReport r = ulm_probe(ctx, samples);
      t.expect(r.passed() && std::all_of(r.samples.begin(), r.samples.end(),
                                          [](const UlmSample& s) { return s.exact(); }),
               std::string(alpha) + " p=" + std::to_string(p));
    }
  }
  return t.finish();
}

Check window_inverses(Rng& rng) {
  Tally t("one-minus-f-window");
  for (int trial = 0; trial < 30; ++trial) {
    const Tower s = random_tower(rng, 4, 32);
    const std::size_t w = uniform(rng, 1, 5);
    const WindowOperator op = one_minus_f_window(s, w);
    const GroupMap id = GroupMap::identity(op.product.group);
    t.expect(compose(op.one_minus_f, op.inverse) == id && compose(op.inverse, op.one_minus_f) == id,
             print_tower(s));
  }
  return t.finish();
}

std::vector<Check> property_checks(std::uint64_t seed) {
  using Fn = Check (*)(Rng&);
  const Fn checks[] = {snf_certificates,      finite_towers_are_ml, shift_invariance, null_extensions_local,
                       products_local,        walker_normal_form,   ulm_lengths,      window_inverses};
  std::vector<Check> out;
  std::uint64_t k = 0;
  for (Fn f : checks) {
    Rng rng(seed * 1000003 + k++);
    out.push_back(f(rng));
  }
  return out;
}

std::string describe(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::vector<Example> example_corpus() {
  std::vector<Example> out;

  out.push_back({tower_scenario("S(Z/6,x2)", Tower::s_of_a(z(6), 2)),
                 plus(tower_facts(stabilized(1), "1", group(0, {3}), "Zero", "false"),
                      {{"/results/omega_complete/value/value", "true"},
                       {"/results/decompose/value/E/prefix", Json::array()},
                       {"/results/decompose/value/E/tail/group", group(0, {3})},
                       {"/results/decompose/value/E_epimorphic", true},
                       {"/results/decompose/value/L_null", true}})});
  out.push_back({tower_scenario("S(Z,x2)", Tower::s_of_a(FgAbGroup::free(1), 2)),
                 plus(tower_facts(never(), "w", group(0, {}), "NonZero", "false"),
                      {{"/results/omega_complete/value/value", "false"}})});
  out.push_back({tower_scenario("S(Z,x3)", Tower::s_of_a(FgAbGroup::free(1), 3)),
                 plus(tower_facts(never(), "w", group(0, {}), "NonZero", "false"),
                      {{"/results/omega_complete/value/value", "false"}})});
  out.push_back({tower_scenario("S(Z/4,x2)", Tower::s_of_a(z(4), 2)),
                 tower_facts(stabilized(2), "2", group(0, {}), "Zero", "true")});
  out.push_back({tower_scenario("S(Z/9,x3)", Tower::s_of_a(z(9), 3)),
                 tower_facts(stabilized(2), "2", group(0, {}), "Zero", "true")});
  out.push_back({tower_scenario("S(Z/25,x5)", Tower::s_of_a(z(25), 5)),
                 tower_facts(stabilized(2), "2", group(0, {}), "Zero", "true")});
  out.push_back({tower_scenario("S(Z/8,x2)", Tower::s_of_a(z(8), 2)),
                 tower_facts(stabilized(3), "3", group(0, {}), "Zero", "true")});
  out.push_back({tower_scenario("S(Z+Z/4,x2)", Tower::s_of_a(FgAbGroup(1, {4}), 2)),
                 plus(tower_facts(never(), "w", group(0, {}), "NonZero", "false"),
                      {{"/results/omega_complete/value/value", "false"}})});
  out.push_back({tower_scenario("S(Z/6,x5)", Tower::s_of_a(z(6), 5)),
                 plus(tower_facts(stabilized(0), "0", group(0, {6}), "Zero", "false"),
                      {{"/results/decompose/value/L_null", true}})});
  out.push_back({tower_scenario("S(Z/12,x2)", Tower::s_of_a(z(12), 2)),
                 plus(tower_facts(stabilized(2), "2", group(0, {3}), "Zero", "false"),
                      {{"/results/decompose/value/E/tail/group", group(0, {3})},
                       {"/results/decompose/value/E_epimorphic", true},
                       {"/results/decompose/value/L/tail/group", group(0, {4})},
                       {"/results/decompose/value/L_null", false}})});
  out.push_back({tower_scenario("constant Z", Tower::s_of_a(FgAbGroup::free(1), 1)),
                 plus(tower_facts(stabilized(0), "0", group(1, {}), "Zero", "false"),
                      {{"/results/omega_complete/value/value", "true"}})});
  out.push_back({tower_scenario("zero", Tower::zero()),
                 tower_facts(stabilized(0), "0", group(0, {}), "Zero", "true")});
  out.push_back({tower_scenario("Z/4 <-x2- Z/4 <- 0", two_level()),
                 tower_facts(stabilized(2), "2", group(0, {}), "Zero", "true")});

  out.push_back({walker_scenario("D'(2, w*2+3)", 2, "w*2+3", {}, {"0", "5", "w", "w+1", "w*2+2"}),
                 {{"/results/ulm_probe/value/passed", true},
                  {"/results/ulm_probe/value/samples/2/height", "w"},
                  {"/results/ulm_probe/value/samples/4/height", "w*2 + 2"}}});
  out.push_back({walker_scenario("D'(3, 1)", 3, "1", {"e[0]", "3*e[0]"}, {"0"}),
                 {{"/results/ulm_probe/value/passed", true},
                  {"/results/normal_form/value/0/normal_form", "1*e[0]"},
                  {"/results/normal_form/value/1/normal_form", "0"}}});
  out.push_back({walker_scenario("D'(5, w)", 5, "w", {}, {"0", "1", "7"}),
                 {{"/results/ulm_probe/value/passed", true}}});
  out.push_back({walker_scenario("D'(3, w) carries", 3, "w", {"3*e[0,1]", "3*e[1]", "-1*e[0,1]"}, {}),
                 {{"/results/normal_form/value/0/normal_form", "1*e[1]"},
                  {"/results/normal_form/value/1/normal_form", "0"},
                  {"/results/normal_form/value/2/normal_form", "2*e[0, 1] + 2*e[1]"},
                  {"/results/normal_form/value/2/height", "0"}}});
  out.push_back({walker_scenario("D'(2, w) carries", 2, "w", {"2*e[0,1]", "4*e[0,1]"}, {}),
                 {{"/results/normal_form/value/0/normal_form", "1*e[1]"},
                  {"/results/normal_form/value/1/normal_form", "0"}}});
  return out;
}

std::vector<std::string> suite_names() { return {"paper-examples", "property-suite"}; }

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  SuiteReport out{std::string(name), seed, {}, {}};
  if (name == "paper-examples") {
    const std::vector<Example> examples = example_corpus();
    std::vector<Scenario> scenarios;
    for (const Example& e : examples) scenarios.push_back(e.scenario);
    out.reports = run_scenarios(scenarios);
    for (const Example& e : examples) {
      const auto it = std::find_if(out.reports.begin(), out.reports.end(),
                                   [&](const Report& r) { return r.scenario == e.scenario.name; });
      const Json doc = to_json(*it);
      for (const Expectation& x : e.expect) {
        const Json::json_pointer ptr(x.pointer);
        const bool present = doc.contains(ptr);
        const bool ok = present && doc.at(ptr) == x.value;
        out.checks.push_back(Check{e.scenario.name + " " + x.pointer, ok,
                                   ok ? describe(x.value)
                                      : "expected " + describe(x.value) + ", got " +
                                            (present ? describe(doc.at(ptr)) : std::string("nothing"))});
      }
      if (const Tower* t = std::get_if<Tower>(&e.scenario.input)) {
        const std::string text = print_tower(*t);
        const Tower back = parse_tower(text);
        out.checks.push_back(Check{e.scenario.name + " round-trip", back == *t && print_tower(back) == text, ""});
      }
    }
    return out;
  }
  if (name == "property-suite") {
    out.checks = property_checks(seed);
    return out;
  }
  throw UnknownSuite("unknown suite \"" + std::string(name) + "\"");
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (const Check& c : r.checks) {
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  Json reports = Json::array();
  for (const Report& rep : r.reports) reports.push_back(to_json(rep));
  return Json{{"schema_version", kSchemaVersion},
              {"suite", r.suite},
              {"seed", r.seed},
              {"passed", r.passed()},
              {"scenarios", r.reports.size()},
              {"checks", std::move(checks)},
              {"reports", std::move(reports)}};
}

std::string summary(const SuiteReport& r) {
  std::ostringstream os;
  for (const Report& rep : r.reports) os << summary(rep);
  std::size_t failed = 0;
  for (const Check& c : r.checks) {
    if (c.passed) continue;
    ++failed;
    os << "FAIL " << c.name << ": " << c.detail << "\n";
  }
  if (r.suite == "property-suite") {
    for (const Check& c : r.checks) {
      if (c.passed) os << "ok   " << c.name << ": " << c.detail << "\n";
    }
  }
  os << r.suite << " (seed " << r.seed << "): " << r.reports.size() << " scenarios, " << r.checks.size()
     << " checks, " << failed << " failed\n";
  return os.str();
}

}  // namespace dlim::cli
