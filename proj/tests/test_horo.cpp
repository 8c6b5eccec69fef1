#include "ekt/horo.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ekt;
using namespace ekt::testing;

namespace {

HorosphericalDatum load_horo(const std::string& name) {
  return parse_horo(nlohmann::json::parse(read_file(std::string(EKT_DATA_DIR) + "/horo/" + name + ".json")));
}

LaurentPoly mono(const IntVec& u) { return LaurentPoly::monomial(u); }

}  // namespace

TEST(Horo, SL2UMembership) {
  HoroRing r = k_horospherical(load_horo("sl2u"));
  // components over the two fiber cones are elements of R(T)
  EXPECT_TRUE(r.check({LaurentPoly::one(1), mono({1})}).verdict);
  EXPECT_FALSE(r.check({LaurentPoly::one(1), LaurentPoly::constant(1, 2)}).verdict);
  EXPECT_TRUE(r.check({LaurentPoly::constant(1, 2), LaurentPoly::constant(1, 2)}).verdict);
}

TEST(Horo, SL2UBoxRank) {
  HoroRing r = k_horospherical(load_horo("sl2u"));
  EXPECT_EQ(r.box_rank(2).rank(), 4u);
  EXPECT_EQ(r.box_rank(3).rank(), 4u);
}

TEST(Horo, SL2UPresentation) {
  auto p = horo_presentation(load_horo("sl2u"));
  EXPECT_TRUE(p.verified);
  EXPECT_EQ(p.presentation.num_generators, 2u);
}

TEST(Horo, ParabolicSL3) {
  auto d = load_horo("sl3_I0");
  auto v = validate_horo(d);
  EXPECT_TRUE(v.ring_hypotheses());
  EXPECT_TRUE(v.presentation_hypotheses());
  HoroRing r = k_horospherical(d);
  // the fiber character is omega_2, which W_I fixes
  EXPECT_EQ(r.base.line_class({1}), mono({0, 1}));
  EXPECT_TRUE(horo_presentation(d).verified);
}

TEST(Horo, UnfixedCharacterRejected) {
  auto d = load_horo("sl2_unfixed");
  auto v = validate_horo(d);
  EXPECT_EQ(v.unfixed_columns, std::vector<int>{0});
  EXPECT_FALSE(v.ring_hypotheses());
  EXPECT_THROW(k_horospherical(d), InputError);
}

TEST(Horo, IncompleteFanFlagged) {
  auto d = load_horo("sl2_incomplete");
  auto v = validate_horo(d);
  EXPECT_FALSE(v.complete);
  EXPECT_FALSE(v.cellular.has_value());
  ASSERT_FALSE(v.violations.empty());
  EXPECT_NE(v.violations[0].find("not complete"), std::string::npos);
  EXPECT_THROW(k_horospherical(d), InputError);
}

TEST(Horo, ColoredFansRejected) {
  EXPECT_THROW(load_horo("sl2_colored"), InputError);
}

TEST(Horo, DimensionChecks) {
  auto j = nlohmann::json::parse(read_file(std::string(EKT_DATA_DIR) + "/horo/sl2u.json"));
  j["char_embedding"] = {{1, 0}};
  EXPECT_THROW(parse_horo(j), InputError);
  j["char_embedding"] = {{0}};
  EXPECT_THROW(parse_horo(j), InputError);
  j.erase("cartan");
  EXPECT_THROW(parse_horo(j), InputError);
}

TEST(Horo, NonprimitiveEmbedding) {
  auto d = load_horo("sl2_p2");
  HoroRing r = k_horospherical(d);
  EXPECT_TRUE(r.check({LaurentPoly::one(1), mono({2})}).verdict);
  EXPECT_FALSE(r.check({LaurentPoly::one(1), mono({1})}).verdict);
}
