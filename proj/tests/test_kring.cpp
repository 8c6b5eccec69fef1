#include "ekt/kring.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ekt;
using namespace ekt::testing;

namespace {

LaurentPoly mono(const IntVec& u, long long c = 1) { return LaurentPoly::monomial(u, c); }
LaurentPoly one(std::size_t n) { return LaurentPoly::one(n); }

const std::vector<std::string> kCellular = {"p1", "p2", "p1xp1", "f1", "p112"};

FiltrationBasis basis_for(const Fan& f) {
  auto rep = check_cellular(f, search_generic(f, 0));
  return build_filtration_basis_auto(f, *rep.structure);
}

}  // namespace

TEST(GkmCheck, P1Examples) {
  Fan f = load_fan("p1");
  EXPECT_TRUE(gkm_check(f, ConeTuple{{one(1), mono({1})}}).verdict);
  auto rep = gkm_check(f, ConeTuple{{LaurentPoly(1), one(1)}});
  ASSERT_FALSE(rep.verdict);
  ASSERT_EQ(rep.failures.size(), 1u);
  EXPECT_EQ(rep.failures[0].wall_index, 0u);
  EXPECT_EQ(rep.failures[0].difference, LaurentPoly::constant(1, -1));
  EXPECT_THROW(gkm_check(f, ConeTuple{{one(1)}}), InputError);
}

TEST(GkmCheck, DiagonalAndClosure) {
  std::mt19937_64 rng(51);
  for (const auto& name : kCellular) {
    Fan f = load_fan(name);
    LaurentPoly g = mono(random_vec(rng, f.rank, 3), 2) + mono(random_vec(rng, f.rank, 3), -5);
    EXPECT_TRUE(gkm_check(f, constant_embedding(f, g)).verdict);
    auto a = random_members(f, 2, 50, rng), b = random_members(f, 2, 50, rng);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_TRUE(gkm_check(f, a[k] + b[k]).verdict);
      EXPECT_TRUE(gkm_check(f, a[k] * b[k]).verdict) << name;
    }
    auto c1 = constant_embedding(f, one(f.rank));
    EXPECT_EQ(c1 * a[0], a[0]);
    LaurentPoly h = mono(random_vec(rng, f.rank, 2)) - one(f.rank);
    EXPECT_EQ(constant_embedding(f, g * h), constant_embedding(f, g) * constant_embedding(f, h));
  }
}

TEST(PlpCheck, ConstantsGlue) {
  Fan f = load_fan("p2");
  EXPECT_TRUE(plp_check(f, constant_embedding(f, mono({1, -2}, 3) + one(2))).verdict);
}

TEST(PlpCheck, ConstructedCounterexample) {
  Fan f = load_fan("p2");
  // glues across the wall of cone 2 with character (0,1), not across the other
  ConeTuple t{{one(2), one(2), one(2) + (one(2) - mono({0, 1})) * mono({2, 1})}};
  auto rep = plp_check(f, t);
  ASSERT_FALSE(rep.verdict);
  EXPECT_EQ(rep.witness->face, (Cone{{2}}));
  EXPECT_EQ(rep.witness->cone_a, 1);
  EXPECT_EQ(rep.witness->cone_b, 2);
  auto g = gkm_check(f, t);
  ASSERT_EQ(g.failures.size(), 1u);
  EXPECT_EQ(g.failures[0].wall.face, (Cone{{2}}));
}

TEST(PlpCheck, AgreesWithGkmCheck) {
  std::mt19937_64 rng(52);
  for (const auto& name : kCellular) {
    Fan f = load_fan(name);
    for (auto& t : random_members(f, 2, 30, rng)) {
      EXPECT_TRUE(gkm_check(f, t).verdict);
      EXPECT_TRUE(plp_check(f, t).verdict);
      std::size_t i = rng() % t.size();
      t[i] += mono(random_vec(rng, f.rank, 2));
      EXPECT_FALSE(gkm_check(f, t).verdict);
      EXPECT_FALSE(plp_check(f, t).verdict);
    }
  }
}

TEST(GkmCheck, RelabelingInvariant) {
  std::mt19937_64 rng(53);
  Fan f = load_fan("f1");
  Fan g = f;
  std::reverse(g.max_cones.begin(), g.max_cones.end());
  for (auto t : random_members(f, 2, 20, rng)) {
    if (rng() % 2) t[rng() % t.size()] += one(2);
    ConeTuple r = t;
    std::reverse(r.components.begin(), r.components.end());
    EXPECT_EQ(gkm_check(f, t).verdict, gkm_check(g, r).verdict);
  }
}

TEST(Rank, BoxExamples) {
  EXPECT_EQ(box_rank(load_fan("p1"), 2).rank(), 2u);
  EXPECT_EQ(box_rank(load_fan("p2"), 2).rank(), 3u);
  EXPECT_EQ(box_rank(load_fan("p112"), 3).rank(), 3u);
}

TEST(Rank, EqualsNumberOfCones) {
  for (const auto& name : kCellular) {
    Fan f = load_fan(name);
    auto rep = ordinary_k_rank(f);
    EXPECT_EQ(rep.rank, f.max_cones.size()) << name;
    EXPECT_LE(rep.radius, 4);
  }
}

TEST(Filtration, P1) {
  Fan f = load_fan("p1");
  auto rep = check_cellular(f, {1});
  auto b = build_filtration_basis(f, *rep.structure, 1);
  ASSERT_TRUE(b);
  ASSERT_EQ(b->elements.size(), 2u);
  EXPECT_EQ(b->elements[0], constant_embedding(f, one(1)));
  EXPECT_EQ(b->elements[1], (ConeTuple{{LaurentPoly(1), one(1) - mono({-1})}}));
}

TEST(Filtration, TriangularMembersOnBundledFans) {
  for (const auto& name : kCellular) {
    Fan f = load_fan(name);
    auto b = basis_for(f);
    ASSERT_EQ(b.elements.size(), f.max_cones.size());
    for (std::size_t p = 0; p < b.elements.size(); ++p) {
      EXPECT_TRUE(gkm_check(f, b.elements[p]).verdict);
      EXPECT_FALSE(b.elements[p][b.order[p]].is_zero());
      for (std::size_t q = 0; q < p; ++q) EXPECT_TRUE(b.elements[p][b.order[q]].is_zero());
    }
  }
}

TEST(Filtration, GenerationOnBundledFans) {
  for (const auto& name : kCellular) {
    Fan f = load_fan(name);
    auto b = basis_for(f);
    auto rep = verify_generation(f, b, 3, 25, 7);
    EXPECT_EQ(rep.samples, 25u);
    EXPECT_TRUE(rep.complete()) << name;
  }
}

TEST(Filtration, ProductAndDiagonalRepresentable) {
  Fan f = load_fan("p2");
  auto b = basis_for(f);
  EXPECT_TRUE(triangular_coefficients(b, b.elements[1] * b.elements[2]));
  LaurentPoly g = mono({1, 1}) - mono({0, -2}, 3);
  auto c = triangular_coefficients(b, constant_embedding(f, g));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], g);
  EXPECT_TRUE((*c)[1].is_zero());
  EXPECT_FALSE(triangular_coefficients(b, ConeTuple{{one(2), LaurentPoly(2), LaurentPoly(2)}}));
}

TEST(Sr, NonFaces) {
  EXPECT_EQ(minimal_nonfaces(load_fan("p2")), (std::vector<std::vector<int>>{{0, 1, 2}}));
  EXPECT_EQ(minimal_nonfaces(load_fan("p1")), (std::vector<std::vector<int>>{{0, 1}}));
  EXPECT_EQ(minimal_nonfaces(load_fan("f1")), (std::vector<std::vector<int>>{{0, 2}, {1, 3}}));
}

TEST(Sr, P1Relations) {
  auto p = sr_presentation(load_fan("p1"));
  ASSERT_EQ(p.relations.size(), 2u);
  const auto& nf = p.relations[0];
  EXPECT_EQ(nf.kind, "nonface");
  ASSERT_EQ(nf.terms.size(), 4u);  // 1 - X0 - X1 + X0 X1
  EXPECT_EQ(nf.terms[0].first, (IntVec{0, 0}));
  EXPECT_EQ(nf.terms[3].first, (IntVec{1, 1}));
  EXPECT_EQ(nf.terms[3].second, one(1));
  EXPECT_EQ(nf.terms[1].second, -one(1));
  const auto& ch = p.relations[1];
  EXPECT_EQ(ch.kind, "character");
  EXPECT_EQ(ch.terms[0].first, (IntVec{1, -1}));
  EXPECT_EQ(ch.terms[1].second, -mono({1}));
}

TEST(Sr, P2CharacterRelations) {
  auto p = sr_presentation(load_fan("p2"));
  ASSERT_EQ(p.relations.size(), 3u);
  EXPECT_EQ(p.relations[1].terms[0].first, (IntVec{1, 0, -1}));
  EXPECT_EQ(p.relations[2].terms[0].first, (IntVec{0, 1, -1}));
  EXPECT_THROW(sr_presentation(load_fan("p112")), InputError);
}

TEST(SrToPlp, P1Images) {
  auto s = sr_to_plp(load_fan("p1"));
  EXPECT_EQ(s.x[0], (ConeTuple{{mono({1}), one(1)}}));
  EXPECT_EQ(s.x[1], (ConeTuple{{one(1), mono({-1})}}));
  EXPECT_TRUE(s.members_ok);
  EXPECT_TRUE(s.relations_zero);
}

TEST(SrToPlp, RelationsVanish) {
  for (const char* name : {"p2", "p1xp1", "f1", "f2", "p3"}) {
    auto s = sr_to_plp(load_fan(name));
    EXPECT_TRUE(s.members_ok) << name;
    EXPECT_TRUE(s.relations_zero) << name;
  }
}

TEST(SrToPlp, BoundedDegreeSurjectivity) {
  for (const char* name : {"p2", "p1xp1", "f1"}) {
    auto rep = sr_surjectivity_probe(load_fan(name), 1, 3, 25, 3);
    EXPECT_TRUE(rep.complete()) << name << " " << rep.solved << "/" << rep.samples;
  }
}

TEST(SrToPlp, DegreeMustGrowWithTheBox) {
  // the constant e^(2,2) on P2 is X0^2 X1^2 X2^-4
  Fan p2 = load_fan("p2");
  EXPECT_FALSE(sr_surjectivity_probe(p2, 2, 3, 25, 3).complete());
  EXPECT_TRUE(sr_surjectivity_probe(p2, 2, 4, 25, 3).complete());
}

TEST(TupleJson, Roundtrip) {
  std::mt19937_64 rng(54);
  Fan f = load_fan("f1");
  auto t = random_members(f, 2, 1, rng)[0];
  EXPECT_EQ(tuple_from_json(to_json(t), 2), t);
}
