#include "ekt/fan.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ekt;
using namespace ekt::testing;

namespace {

const std::vector<std::string> kFans = {"p1", "p2", "p1xp1", "f1", "f2", "p112", "p3"};

// Independent oracle: sample directions and look for a covering cone.
bool sampled_complete(const Fan& f, std::mt19937_64& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    IntVec v = random_vec(rng, f.rank, 50);
    if (is_zero(v)) continue;
    bool covered = false;
    for (std::size_t i = 0; i < f.max_cones.size() && !covered; ++i) {
      auto c = barycentric(f, i, v);
      covered = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; });
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace

TEST(ParseFan, P1) {
  Fan f = parse_fan(std::string(R"({"rank":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]})"));
  EXPECT_EQ(f.rank, 1u);
  EXPECT_EQ(f.rays.size(), 2u);
  EXPECT_EQ(f.max_cones.size(), 2u);
  EXPECT_TRUE(validate_fan(f).valid());
}

TEST(ParseFan, P2IsValid) {
  Fan f = load_fan("p2");
  EXPECT_TRUE(validate_fan(f).valid());
  EXPECT_EQ(f.name.value_or(""), "P2");
}

TEST(ParseFan, Rejections) {
  EXPECT_THROW(parse_fan(read_file(std::string(EKT_DATA_DIR) + "/bad/impure.json")), InputError);
  EXPECT_THROW(parse_fan(read_file(std::string(EKT_DATA_DIR) + "/bad/zero_ray.json")), InputError);
  EXPECT_THROW(parse_fan(read_file(std::string(EKT_DATA_DIR) + "/bad/truncated.json")), InputError);
  EXPECT_THROW(parse_fan(std::string(R"({"rank":2,"rays":[[1,0],[2,0]],"max_cones":[[0,1]]})")), InputError);
  EXPECT_THROW(parse_fan(std::string(R"({"rank":2,"rays":[[1,0]],"max_cones":[[0,3]]})")), InputError);
}

TEST(ParseFan, PrimitivizesWithWarning) {
  Fan f = parse_fan(std::string(R"({"rank":2,"rays":[[2,0],[0,1]],"max_cones":[[0,1]]})"));
  EXPECT_EQ(f.rays[0], (IntVec{1, 0}));
  EXPECT_EQ(f.warnings.size(), 1u);
}

TEST(ValidateFan, OverlapDetectedWithWitness) {
  Fan f = load_fan("overlap");
  auto rep = validate_fan(f);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, "not_a_face");
  EXPECT_EQ(rep.violations[0].items, (std::vector<int>{0, 1}));
  ASSERT_TRUE(rep.violations[0].witness);
  EXPECT_EQ(*rep.violations[0].witness, (IntVec{1, 1}));
}

TEST(ValidateFan, SingleConeValidNotComplete) {
  Fan f = load_fan("quadrant");
  EXPECT_TRUE(validate_fan(f).valid());
  EXPECT_FALSE(is_complete(f));
}

TEST(ValidateFan, DuplicateRays) {
  Fan f = parse_fan(std::string(R"({"rank":1,"rays":[[1],[1]],"max_cones":[[0],[1]]})"));
  auto rep = validate_fan(f);
  ASSERT_FALSE(rep.valid());
  EXPECT_EQ(rep.violations[0].kind, "duplicate_ray");
}

TEST(ValidateFan, OverlapInRankThree) {
  // two octant-like cones whose interiors meet but share no rays
  Fan f = parse_fan(std::string(
      R"({"rank":3,"rays":[[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,1,-1],[2,1,1]],"max_cones":[[0,1,2],[3,4,5]]})"));
  EXPECT_FALSE(validate_fan(f).valid());
}

TEST(ValidateFan, BundledFansValid) {
  for (const auto& name : kFans) EXPECT_TRUE(validate_fan(load_fan(name)).valid()) << name;
}

TEST(Walls, P1) {
  auto w = walls(load_fan("p1"));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_TRUE(w[0].face.rays.empty());
  EXPECT_EQ(w[0].character, (IntVec{1}));
  EXPECT_EQ(w[0].left, 0);
  EXPECT_EQ(w[0].right, 1);
}

TEST(Walls, P2) {
  Fan f = load_fan("p2");
  auto w = walls(f);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1].face.rays, (std::vector<int>{1}));
  EXPECT_EQ(w[1].character, (IntVec{1, 0}));
  for (const auto& wall : w) {
    EXPECT_LT(wall.left, wall.right);
    EXPECT_TRUE(wall.face.is_face_of(f.max_cones[wall.left]));
    EXPECT_TRUE(wall.face.is_face_of(f.max_cones[wall.right]));
    for (int r : wall.face.rays) EXPECT_EQ(dot(wall.character, f.rays[r]), 0);
    EXPECT_EQ(primitive(wall.character), wall.character);
    EXPECT_TRUE(lex_positive(wall.character));
  }
}

TEST(Walls, P1xP1HasFour) { EXPECT_EQ(walls(load_fan("p1xp1")).size(), 4u); }

TEST(Complete, Examples) {
  EXPECT_TRUE(is_complete(load_fan("p2")));
  EXPECT_TRUE(is_complete(load_fan("p112")));
  EXPECT_FALSE(is_complete(load_fan("quadrant")));
}

TEST(Complete, AgreesWithSampler) {
  std::mt19937_64 rng(21);
  for (const auto& name : kFans) {
    Fan f = load_fan(name);
    EXPECT_EQ(is_complete(f), sampled_complete(f, rng, 1000)) << name;
  }
  Fan q = load_fan("quadrant");
  EXPECT_EQ(is_complete(q), sampled_complete(q, rng, 1000));
  // three of the four quadrants: every facet test fails somewhere
  Fan three = parse_fan(std::string(
      R"({"rank":2,"rays":[[1,0],[0,1],[-1,0],[0,-1]],"max_cones":[[0,1],[1,2],[2,3]]})"));
  EXPECT_FALSE(is_complete(three));
  EXPECT_FALSE(sampled_complete(three, rng, 1000));
}

TEST(Barycentric, Examples) {
  Fan p2 = load_fan("p2");
  EXPECT_EQ(barycentric(p2, 0, IntVec{1, 2}), (std::vector<Rational>{1, 2}));
  Fan p112 = load_fan("p112");
  EXPECT_EQ(barycentric(p112, 1, IntVec{2, 1}), (std::vector<Rational>{Rational(3, 2), Rational(-1, 2)}));
  EXPECT_EQ(barycentric(p112, 2, IntVec{2, 1}), (std::vector<Rational>{-3, -2}));
}

TEST(Barycentric, Roundtrip) {
  std::mt19937_64 rng(22);
  for (const auto& name : kFans) {
    Fan f = load_fan(name);
    for (int t = 0; t < 20; ++t) {
      IntVec v = random_vec(rng, f.rank, 9);
      for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        auto c = barycentric(f, i, v);
        for (std::size_t k = 0; k < f.rank; ++k) {
          Rational s = 0;
          for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * f.rays[f.max_cones[i].rays[j]][k];
          EXPECT_EQ(s, v[k]);
        }
      }
    }
  }
}

TEST(Smooth, Cones) {
  EXPECT_TRUE(is_smooth_cone({{1, 0}, {0, 1}}, 2));
  EXPECT_TRUE(is_smooth_cone({{0, 1}, {-1, -2}}, 2));
  EXPECT_FALSE(is_smooth_cone({{1, 0}, {-1, -2}}, 2));
  EXPECT_THROW(is_smooth_cone({{1, 0}, {2, 0}}, 2), InputError);
  EXPECT_TRUE(is_smooth_fan(load_fan("f1")));
  EXPECT_FALSE(is_smooth_fan(load_fan("p112")));
}

TEST(StarQuotient, SingularConeOfP112) {
  Fan f = load_fan("p112");
  auto sq = star_quotient(f, Cone{{2}});
  EXPECT_EQ(sq.lattice.quot_rank, 1u);
  EXPECT_EQ(sq.cones, (std::vector<int>{1, 2}));
  // e1 projects to twice a generator; the primitivized image is a generator
  IntVec img = sq.lattice.apply({1, 0});
  EXPECT_EQ(img[0] * img[0], 4);
  EXPECT_TRUE(is_smooth_cone(sq.generators[0], 1));
}

TEST(StarQuotient, TrivialAndFull) {
  Fan f = load_fan("p2");
  auto origin = star_quotient(f, Cone{});
  EXPECT_EQ(origin.cones.size(), 3u);
  EXPECT_EQ(origin.lattice.quot_rank, 2u);
  auto full = star_quotient(f, f.max_cones[0]);
  EXPECT_EQ(full.lattice.quot_rank, 0u);
  EXPECT_TRUE(full.generators[0].empty());
  EXPECT_TRUE(is_smooth_cone(full.generators[0], 0));
  EXPECT_THROW(star_quotient(f, Cone{{0, 2, 1}}), InputError);
}

TEST(StarQuotient, SmoothStaysSmoothOnF1) {
  Fan f = load_fan("f1");
  for (const auto& tau : all_cones(f)) {
    auto sq = star_quotient(f, tau);
    for (const auto& gens : sq.generators) EXPECT_TRUE(is_smooth_cone(gens, sq.lattice.quot_rank));
  }
}

TEST(AllCones, Counts) {
  EXPECT_EQ(all_cones(load_fan("p112")).size(), 7u);
  EXPECT_EQ(all_cones(load_fan("p1xp1")).size(), 9u);
  EXPECT_EQ(all_cones(load_fan("p3")).size(), 15u);
}
