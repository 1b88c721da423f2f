#include "dlim/io.hpp"

#include <limits>
#include <utility>

#include "dlim/error.hpp"

namespace dlim {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError("missing key \"" + key + "\"", path);
  return *it;
}

const Json* optional_key(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto cut = what.find("syntax error"); cut != std::string::npos) what = what.substr(cut);
    throw ParseError("JSON " + what, line, column);
  }
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer v;
    const std::string s = j.get<std::string>();
    if (s.empty() || v.set_str(s, 10) != 0) throw SchemaError("not a decimal integer: \"" + s + "\"", path);
    return v;
  }
  throw SchemaError("expected an integer", path);
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(integer_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols, const std::string& path) {
  if (!j.is_array()) throw SchemaError("expected an array of rows", path);
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = j[i];
    const std::string rp = child(path, i);
    if (!row.is_array()) throw SchemaError("expected a row array", rp);
    if (row.size() != cols) {
      throw SchemaError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols), rp);
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(row[k], child(rp, k));
  }
  return m;
}

IntMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw SchemaError("expected a nonempty array of rows", path);
  }
  return matrix_from_json(j, j[0].size(), path);
}

Json to_json(const FgAbGroup& g) {
  Json factors = Json::array();
  for (const Integer& d : g.invariant_factors()) factors.push_back(integer_to_json(d));
  return Json{{"free_rank", g.free_rank()}, {"invariant_factors", std::move(factors)}};
}

FgAbGroup group_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError("expected a group object", path);
  std::size_t rank = 0;
  if (const Json* r = optional_key(j, "free_rank")) {
    if (!r->is_number_unsigned()) throw SchemaError("free_rank must be a nonnegative integer", child(path, "free_rank"));
    rank = r->get<std::size_t>();
  }
  std::vector<Integer> factors;
  if (const Json* f = optional_key(j, "invariant_factors")) {
    if (!f->is_array()) throw SchemaError("invariant_factors must be an array", child(path, "invariant_factors"));
    for (std::size_t k = 0; k < f->size(); ++k) {
      factors.push_back(integer_from_json((*f)[k], child(child(path, "invariant_factors"), k)));
    }
  }
  try {
    return FgAbGroup(rank, std::move(factors));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what(), path);
  }
}

Json to_json(const GroupMap& f) {
  return Json{{"domain", to_json(f.domain())},
              {"codomain", to_json(f.codomain())},
              {"matrix", to_json(f.matrix())}};
}

namespace {

GroupMap map_from_matrix_json(const Json& j, const FgAbGroup& domain, const FgAbGroup& codomain,
                              const std::string& mp) {
  IntMatrix m = matrix_from_json(j, domain.num_generators(), mp);
  if (m.rows() != codomain.num_generators()) {
    throw SchemaError("matrix has " + std::to_string(m.rows()) + " rows, expected " +
                          std::to_string(codomain.num_generators()),
                      mp);
  }
  try {
    return GroupMap(domain, codomain, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what(), mp);
  }
}

}  // namespace

GroupMap map_from_json(const Json& j, const FgAbGroup& domain, const FgAbGroup& codomain,
                       const std::string& path) {
  if (j.is_number_integer() || j.is_string()) {
    if (!(domain == codomain)) throw SchemaError("a bare multiplier needs an endomorphism", path);
    return GroupMap::multiplication(domain, integer_from_json(j, path));
  }
  if (!j.is_object()) throw SchemaError("expected a map object", path);
  if (const Json* d = optional_key(j, "domain")) {
    if (!(group_from_json(*d, child(path, "domain")) == domain)) {
      throw SchemaError("domain does not match " + domain.to_string(), child(path, "domain"));
    }
  }
  if (const Json* c = optional_key(j, "codomain")) {
    if (!(group_from_json(*c, child(path, "codomain")) == codomain)) {
      throw SchemaError("codomain does not match " + codomain.to_string(), child(path, "codomain"));
    }
  }
  return map_from_matrix_json(require(j, "matrix", path), domain, codomain, child(path, "matrix"));
}

GroupMap map_from_json(const Json& j, const std::string& path) {
  const FgAbGroup d = group_from_json(require(j, "domain", path), child(path, "domain"));
  const FgAbGroup c = group_from_json(require(j, "codomain", path), child(path, "codomain"));
  return map_from_json(j, d, c, path);
}

Json to_json(const Tower& tower) {
  const Tower t = tower.compacted();
  const std::size_t w = t.prefix_length();
  Json prefix = Json::array();
  for (std::size_t i = 0; i < w; ++i) {
    Json level{{"group", to_json(t.level(i))}};
    if (i > 0) level["map_to_previous"] = to_json(t.map(i - 1).matrix());
    prefix.push_back(std::move(level));
  }
  Json tail;
  if (t.has_zero_tail()) {
    tail = Json{{"kind", "zero"}};
  } else {
    tail = Json{{"kind", "constant_endo"},
                {"group", to_json(t.tail_group())},
                {"endo", to_json(t.tail_endo().matrix())}};
    if (w > 0) tail["map_to_previous"] = to_json(t.map(w - 1).matrix());
  }
  return Json{{"prefix", std::move(prefix)}, {"tail", std::move(tail)}};
}

namespace {

// Matrices inside a tower may be written bare.
GroupMap tower_map(const Json& j, const FgAbGroup& domain, const FgAbGroup& codomain,
                   const std::string& path) {
  if (j.is_array()) return map_from_matrix_json(j, domain, codomain, path);
  return map_from_json(j, domain, codomain, path);
}

}  // namespace

Tower tower_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError("expected a tower object", path);
  if (const Json* kind = optional_key(j, "kind")) {
    if (*kind != "S_of_A") throw SchemaError("unknown tower kind " + kind->dump(), child(path, "kind"));
    const FgAbGroup g = group_from_json(require(j, "group", path), child(path, "group"));
    const Integer m = integer_from_json(require(j, "multiplier", path), child(path, "multiplier"));
    return Tower::s_of_a(g, m);
  }

  std::vector<FgAbGroup> prefix;
  std::vector<GroupMap> maps;
  if (const Json* p = optional_key(j, "prefix")) {
    const std::string pp = child(path, "prefix");
    if (!p->is_array()) throw SchemaError("prefix must be an array", pp);
    for (std::size_t i = 0; i < p->size(); ++i) {
      const Json& level = (*p)[i];
      const std::string lp = child(pp, i);
      FgAbGroup g = group_from_json(require(level, "group", lp), child(lp, "group"));
      if (i > 0) {
        maps.push_back(tower_map(require(level, "map_to_previous", lp), g, prefix.back(),
                                 child(lp, "map_to_previous")));
      } else if (optional_key(level, "map_to_previous")) {
        throw SchemaError("level 0 has no previous level", child(lp, "map_to_previous"));
      }
      prefix.push_back(std::move(g));
    }
  }

  const std::string tp = child(path, "tail");
  const Json& tail = require(j, "tail", path);
  const std::string kind = require(tail, "kind", tp).is_string() ? tail["kind"].get<std::string>() : "";
  TailSpec spec = ZeroTail{};
  std::optional<GroupMap> connection;
  FgAbGroup tail_group;
  if (kind == "constant_endo") {
    tail_group = group_from_json(require(tail, "group", tp), child(tp, "group"));
    GroupMap endo = tower_map(require(tail, "endo", tp), tail_group, tail_group, child(tp, "endo"));
    spec = ConstantEndoTail{tail_group, std::move(endo)};
  } else if (kind != "zero") {
    throw SchemaError("tail kind must be \"constant_endo\" or \"zero\"", child(tp, "kind"));
  }
  if (const Json* c = optional_key(tail, "map_to_previous")) {
    if (prefix.empty()) throw SchemaError("no prefix level to connect to", child(tp, "map_to_previous"));
    connection = tower_map(*c, tail_group, prefix.back(), child(tp, "map_to_previous"));
  }
  try {
    return Tower(std::move(prefix), std::move(maps), std::move(spec), std::move(connection));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what(), path);
  }
}

Tower parse_tower(std::string_view text) { return tower_from_json(parse_json(text)); }

std::string print_tower(const Tower& t) { return to_json(t).dump(2); }

Json to_json(const SmithForm& snf) {
  Json diagonal = Json::array();
  for (std::size_t i = 0; i < std::min(snf.D.rows(), snf.D.cols()); ++i) {
    diagonal.push_back(integer_to_json(snf.D(i, i)));
  }
  return Json{{"U", to_json(snf.U)},
              {"D", to_json(snf.D)},
              {"V", to_json(snf.V)},
              {"diagonal", std::move(diagonal)},
              {"rank", snf.rank()}};
}

Json to_json(const AnalysisReport& r) {
  Json ml;
  if (const auto* s = std::get_if<Stabilized>(&r.ml)) {
    ml = Json{{"kind", "Stabilized"}, {"stage", s->stage}};
  } else if (const auto* n = std::get_if<NeverStabilizes>(&r.ml)) {
    ml = Json{{"kind", "NeverStabilizes"}, {"free_rank_witness", n->free_rank_witness}, {"reason", n->reason}};
  } else {
    ml = Json{{"kind", "Unknown"}, {"horizon", std::get<MlUnknown>(r.ml).horizon}};
  }

  Json length;
  if (const auto* o = std::get_if<Ordinal>(&r.length)) {
    length = Json{{"kind", "Exact"}, {"value", o->to_string()}};
  } else {
    length = Json{{"kind", "UnknownBeyond"}, {"bound", std::get<UnknownBeyond>(r.length).bound.to_string()}};
  }

  Json lim1;
  if (std::holds_alternative<Lim1Zero>(r.lim1)) {
    lim1 = Json{{"kind", "Zero"}};
  } else if (const auto* nz = std::get_if<Lim1NonZero>(&r.lim1)) {
    lim1 = Json{{"kind", "NonZero"}, {"reason", nz->reason}};
  } else {
    lim1 = Json{{"kind", "Unknown"}, {"horizon", std::get<Lim1Unknown>(r.lim1).horizon}};
  }

  Json omega{{"value", to_string(r.omega_complete.complete)}};
  if (r.omega_complete.cokernel_rank_witness) {
    omega["cokernel_rank_witness"] = *r.omega_complete.cokernel_rank_witness;
  }
  if (r.omega_complete.complete == Truth::Unknown) omega["horizon"] = r.horizon;

  Json local{{"value", to_string(r.local)}};
  if (r.local == Truth::Unknown) local["horizon"] = r.horizon;

  Json lim = Json(nullptr);
  if (r.lim) {
    lim = to_json(*r.lim);
    lim["text"] = r.lim->to_string();
  }
  return Json{{"ml", std::move(ml)},       {"length", std::move(length)}, {"lim", std::move(lim)},
              {"lim1", std::move(lim1)},   {"local", std::move(local)},   {"omega_complete", std::move(omega)},
              {"horizon", r.horizon}};
}

}  // namespace dlim
