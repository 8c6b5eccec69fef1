#include "ekt/bundle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace ekt;
using namespace ekt::testing;

namespace {

const IntMatrix kA1{{2}};

FiltrationBasis basis_for(const Fan& f) {
  auto cs = check_cellular(f, search_generic(f, 5)).structure;
  return build_filtration_basis_auto(f, *cs);
}

}  // namespace

TEST(ExtendedCheck, TrivialBaseIsGkm) {
  std::mt19937_64 rng(71);
  for (const char* name : {"p1", "p2", "f1", "p112"}) {
    Fan f = load_fan(name);
    TrivialBase base(f.rank);
    auto members = random_members(f, 2, 15, rng);
    for (std::size_t k = 0; k < members.size(); ++k) {
      ConeTuple t = members[k];
      if (k % 2) t[rng() % t.size()] += LaurentPoly::monomial(random_vec(rng, f.rank, 2));
      EXPECT_EQ(extended_check(f, base, t.components).verdict, gkm_check(f, t).verdict) << name;
    }
  }
}

TEST(ExtendedCheck, PointBaseIsEquality) {
  Fan f = load_fan("p2");
  PointBase base(2);
  EXPECT_TRUE(extended_check(f, base, {5, 5, 5}).verdict);
  auto rep = extended_check(f, base, {5, 4, 5});
  EXPECT_FALSE(rep.verdict);
  EXPECT_EQ(rep.failing_walls.size(), 2u);
  EXPECT_THROW(extended_check(f, base, {1, 1}), InputError);
}

TEST(Kunneth, RealizeIsMultiplicativeAndLandsInMembers) {
  std::mt19937_64 rng(72);
  Fan fiber = load_fan("p1");
  ToricBase base(p1_fan(), {{0, -1}}, {{1}});
  auto plp = random_members(fiber, 2, 14, rng);
  CongruenceSystem sys(2, 2);
  for (const auto& w : walls(p1_fan())) sys.add_congruence(w.left, w.right, IntVec{w.character[0], 0});
  Region box = Region::box(2, 1);
  auto bb = sys.member_basis(box);
  std::size_t checked = 0;
  for (std::size_t k = 0; k + 1 < plp.size(); ++k) {
    ConeTuple b1{sys.to_slots(box, random_combination(bb, rng))};
    ConeTuple b2{sys.to_slots(box, random_combination(bb, rng))};
    auto x = kunneth_realize(fiber, base, b1, plp[k]);
    auto y = kunneth_realize(fiber, base, b2, plp[k + 1]);
    auto xy = kunneth_realize(fiber, base, base.mul(b1, b2), plp[k] * plp[k + 1]);
    EXPECT_TRUE(extended_check(fiber, base, x).verdict);
    for (std::size_t i = 0; i < xy.size(); ++i) EXPECT_EQ(xy[i], base.mul(x[i], y[i]));
    ++checked;
  }
  EXPECT_EQ(checked, 13u);
  ConeTuple bad{{LaurentPoly::one(1), LaurentPoly(1)}};
  EXPECT_THROW(kunneth_realize(fiber, base, base.one(), bad), InputError);
}

TEST(Kunneth, SurjectiveOverTrivialBase) {
  Fan f = load_fan("p1");
  auto rep = kunneth_surjectivity_probe(f, TrivialBase(1), basis_for(f), 2, 30, 73);
  EXPECT_EQ(rep.samples, 30u);
  EXPECT_TRUE(rep.complete());
  EXPECT_EQ(rep.tensor_rank, 2u);
}

TEST(Kunneth, PointBaseCollapsesToConstants) {
  Fan f = load_fan("p2");
  PointBase base(2);
  auto rep = kunneth_surjectivity_probe(f, base, basis_for(f), 2, 10, 74);
  EXPECT_TRUE(rep.complete());
  EXPECT_EQ(rep.tensor_rank, 3u);
  EXPECT_EQ(extended_box_rank(f, base, 2).rank(), 1u);
}

TEST(Kunneth, SurjectiveOverFlagBase) {
  Fan f = load_fan("p1");
  FlagBase base(RootDatum(kA1), {});
  auto rep = kunneth_surjectivity_probe(f, base, basis_for(f), 2, 30, 75);
  EXPECT_TRUE(rep.complete());
}

TEST(Kunneth, CoefficientsRebuildTheTuple) {
  std::mt19937_64 rng(76);
  Fan f = load_fan("p2");
  TrivialBase base(2);
  FiltrationBasis basis = basis_for(f);
  for (const auto& t : random_extended_members(f, base, 2, 10, rng)) {
    auto c = kunneth_coefficients(f, base, basis, t);
    ASSERT_TRUE(c);
    KunnethTensor<TrivialBase> tensor;
    for (std::size_t p = 0; p < c->size(); ++p) tensor.terms.push_back({(*c)[p], basis.elements[p]});
    EXPECT_EQ(kunneth_realize(f, base, tensor), t);
  }
}

TEST(Hirzebruch, DirectAndBundleModelsAgree) {
  for (std::int64_t a : {0, 1, 2}) {
    auto rep = hirzebruch_crosscheck(a, 2, 40, 77 + a);
    EXPECT_TRUE(rep.agree()) << "a=" << a << " agreements " << rep.agreements << "/" << rep.samples << " ranks "
                             << rep.direct_rank << " " << rep.extended_rank;
    EXPECT_EQ(rep.twist, -a);
    EXPECT_GT(rep.members, 0u);
    EXPECT_LT(rep.members, rep.samples);
    EXPECT_EQ(rep.direct_rank, 4u);
  }
}

TEST(BundlePresentation, P1OverSeveralBases) {
  Fan f = load_fan("p1");
  EXPECT_TRUE(bundle_presentation(f, PointBase(1)).verified);
  EXPECT_TRUE(bundle_presentation(f, TrivialBase(1)).verified);
  EXPECT_TRUE(bundle_presentation(f, FlagBase(RootDatum(kA1), {})).verified);
  auto p = bundle_presentation(load_fan("p2"), TrivialBase(2));
  EXPECT_TRUE(p.verified);
  EXPECT_EQ(p.presentation.num_generators, 3u);
  EXPECT_THROW(bundle_presentation(load_fan("p112"), TrivialBase(2)), InputError);
}

TEST(BundleJson, RoundTrip) {
  Fan f = load_fan("p1");
  ToricBase base(p1_fan(), {{0, -1}}, {{1}});
  std::mt19937_64 rng(78);
  for (const auto& t : random_extended_members(f, base, 1, 5, rng))
    EXPECT_EQ(extended_from_json(base, extended_to_json(base, t)), t);
}

TEST(Hirzebruch, WrongTwistIsDetected) {
  std::mt19937_64 rng(79);
  Fan direct = hirzebruch_fan(1);
  ToricBase wrong = hirzebruch_base(1);
  std::size_t disagreements = 0;
  for (const auto& t : random_members(direct, 2, 20, rng))
    if (!extended_check(p1_fan(), wrong, detail::to_bundle_side(t)).verdict) ++disagreements;
  EXPECT_GT(disagreements, 0u);
}
