#include <gtest/gtest.h>

#include "dlim/error.hpp"
#include "dlim/io.hpp"
#include "oracles.hpp"

using dlim::FgAbGroup;
using dlim::GroupMap;
using dlim::IntMatrix;
using dlim::Json;
using dlim::Tower;

namespace {

FgAbGroup z(long n) { return FgAbGroup::cyclic(n); }

template <typename F>
std::string schema_path(F&& f) {
  try {
    f();
  } catch (const dlim::SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(Json, SyntaxErrorsCarryPosition) {
  try {
    dlim::parse_json("{\n  \"a\": [1, 2,\n  ]\n}");
    FAIL() << "expected ParseError";
  } catch (const dlim::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GE(e.column(), 1u);
  }
  EXPECT_THROW(dlim::parse_json(""), dlim::ParseError);
}

TEST(Json, Integers) {
  EXPECT_EQ(dlim::integer_from_json(Json(42)), 42);
  EXPECT_EQ(dlim::integer_from_json(Json(-7)), -7);
  EXPECT_EQ(dlim::integer_from_json(Json("123456789012345678901234567890")),
            dlim::Integer("123456789012345678901234567890"));
  EXPECT_THROW(dlim::integer_from_json(Json(1.5)), dlim::SchemaError);
  EXPECT_THROW(dlim::integer_from_json(Json("12x")), dlim::SchemaError);
  const dlim::Integer big("-99999999999999999999999");
  EXPECT_EQ(dlim::integer_from_json(dlim::integer_to_json(big)), big);
  EXPECT_TRUE(dlim::integer_to_json(5).is_number_integer());
}

TEST(Json, GroupsAndMaps) {
  const FgAbGroup g(1, {2, 4});
  const Json jg = dlim::to_json(g);
  EXPECT_EQ(jg["free_rank"], 1);
  EXPECT_EQ(jg["invariant_factors"], Json::array({2, 4}));
  EXPECT_EQ(dlim::group_from_json(jg), g);
  // Non-canonical factors are rejected rather than silently normalized.
  EXPECT_THROW(dlim::group_from_json(dlim::parse_json(R"({"free_rank":0,"invariant_factors":[4,2]})")),
               dlim::SchemaError);

  const GroupMap f(z(4), z(8), IntMatrix{{2}});
  EXPECT_EQ(dlim::map_from_json(dlim::to_json(f)), f);
  // Not well defined: 1 -> 1 from Z/4 to Z/8.
  EXPECT_THROW(dlim::map_from_json(dlim::parse_json(
                   R"({"domain":{"free_rank":0,"invariant_factors":[4]},
                       "codomain":{"free_rank":0,"invariant_factors":[8]},"matrix":[[1]]})")),
               dlim::SchemaError);
}

TEST(Json, MatrixShapes) {
  EXPECT_EQ(dlim::matrix_from_json(dlim::parse_json("[[1,2],[3,4]]")), (IntMatrix{{1, 2}, {3, 4}}));
  EXPECT_EQ(dlim::matrix_from_json(Json::array(), 3), IntMatrix(0, 3));
  EXPECT_EQ(schema_path([] { dlim::matrix_from_json(dlim::parse_json("[[1,2],[3]]")); }), "/1");
  EXPECT_THROW(dlim::matrix_from_json(Json::array()), dlim::SchemaError);
}

TEST(Json, SOfAConvenienceForm) {
  const Tower t = dlim::parse_tower(R"({"kind":"S_of_A","group":{"free_rank":0,"invariant_factors":[6]},
                                        "multiplier":2})");
  EXPECT_EQ(t, Tower::s_of_a(z(6), 2));
}

TEST(Json, ExplicitFormWithBareMatricesAndMultipliers) {
  const Tower t = dlim::parse_tower(R"({
    "prefix": [
      {"group": {"free_rank": 0, "invariant_factors": [4]}},
      {"group": {"free_rank": 0, "invariant_factors": [4]}, "map_to_previous": [[2]]}
    ],
    "tail": {"kind": "constant_endo", "group": {"free_rank": 1, "invariant_factors": []},
             "endo": 3, "map_to_previous": [[1]]}
  })");
  EXPECT_EQ(t.prefix_length(), 2u);
  EXPECT_EQ(t.map(0).as_multiplication(), 2);
  EXPECT_EQ(t.tail_multiplier(), 3);
  EXPECT_EQ(t.map(1).matrix(), (IntMatrix{{1}}));
}

TEST(Json, ZeroTail) {
  const Tower t = dlim::parse_tower(R"({"prefix":[{"group":{"free_rank":0,"invariant_factors":[3]}}],
                                        "tail":{"kind":"zero"}})");
  EXPECT_TRUE(t.has_zero_tail());
  EXPECT_EQ(t.level(0), z(3));
  EXPECT_EQ(dlim::parse_tower(R"({"tail":{"kind":"zero"}})"), Tower::zero());
}

TEST(Json, SchemaErrorPaths) {
  EXPECT_EQ(schema_path([] { dlim::parse_tower(R"({"prefix":[]})"); }), "");
  EXPECT_EQ(schema_path([] { dlim::parse_tower(R"({"tail":{"kind":"spiral"}})"); }), "/tail/kind");
  EXPECT_EQ(schema_path([] { dlim::parse_tower(R"({"kind":"T_of_B"})"); }), "/kind");
  EXPECT_EQ(schema_path([] {
              dlim::parse_tower(R"({"prefix":[{"group":{"free_rank":0,"invariant_factors":[2]}},
                                               {"group":{"free_rank":"x"}}],"tail":{"kind":"zero"}})");
            }),
            "/prefix/1/group/free_rank");
  EXPECT_EQ(schema_path([] {
              dlim::parse_tower(R"({"prefix":[{"group":{"free_rank":0,"invariant_factors":[2]}},
                                               {"group":{"free_rank":0,"invariant_factors":[2]}}],
                                    "tail":{"kind":"zero"}})");
            }),
            "/prefix/1");
  EXPECT_EQ(schema_path([] {
              dlim::parse_tower(R"({"tail":{"kind":"constant_endo",
                                    "group":{"free_rank":0,"invariant_factors":[4]},"endo":[[1,2]]}})");
            }),
            "/tail/endo/0");
}

TEST(Json, TowerRoundTrip) {
  oracle::Rng rng(71);
  std::vector<Tower> towers = {Tower::zero(), Tower::s_of_a(FgAbGroup::free(2), 5),
                               Tower::s_of_a(FgAbGroup(1, {4}), 2)};
  for (int i = 0; i < 100; ++i) towers.push_back(oracle::random_finite_tower(rng, 4, 64));
  for (int i = 0; i < 30; ++i) towers.push_back(oracle::random_null_tower(rng, 3, 64));
  for (const Tower& t : towers) {
    const std::string text = dlim::print_tower(t);
    const Tower back = dlim::parse_tower(text);
    EXPECT_EQ(back, t);
    EXPECT_EQ(dlim::print_tower(back), text);
  }
}

TEST(Json, SmithFormReport) {
  const Json j = dlim::to_json(dlim::smith_normal_form(IntMatrix{{2, 0}, {0, 3}}));
  EXPECT_EQ(j["diagonal"], Json::array({1, 6}));
  EXPECT_TRUE(j.contains("U"));
  EXPECT_TRUE(j.contains("V"));
}

TEST(Json, AnalysisReport) {
  const Json a = dlim::to_json(dlim::analyze(Tower::s_of_a(z(6), 2)));
  EXPECT_EQ(a["ml"]["kind"], "Stabilized");
  EXPECT_EQ(a["ml"]["stage"], 1);
  EXPECT_EQ(a["length"]["kind"], "Exact");
  EXPECT_EQ(a["length"]["value"], "1");
  EXPECT_EQ(a["lim"]["invariant_factors"], Json::array({3}));
  EXPECT_EQ(a["lim1"]["kind"], "Zero");
  EXPECT_EQ(a["local"]["value"], "false");
  EXPECT_EQ(a["omega_complete"]["value"], "true");

  const Json b = dlim::to_json(dlim::analyze(Tower::s_of_a(FgAbGroup::free(1), 2)));
  EXPECT_EQ(b["ml"]["kind"], "NeverStabilizes");
  EXPECT_EQ(b["length"]["value"], "w");
  EXPECT_EQ(b["lim1"]["kind"], "NonZero");
  EXPECT_EQ(b["omega_complete"]["value"], "false");
  EXPECT_EQ(b["omega_complete"]["cokernel_rank_witness"], 1);

  const Json c = dlim::to_json(dlim::analyze(Tower::s_of_a(z(64), 2), 2));
  EXPECT_EQ(c["ml"]["kind"], "Unknown");
  EXPECT_EQ(c["ml"]["horizon"], 2);
  EXPECT_EQ(c["length"]["kind"], "UnknownBeyond");
  EXPECT_TRUE(c["lim"].is_null());
  EXPECT_EQ(c["lim1"]["kind"], "Unknown");
  EXPECT_EQ(c["lim1"]["horizon"], 2);
}
