#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dispersal/generators.hpp"
#include "dispersal/solver.hpp"

using namespace dispersal;

namespace {

Rational Q(long v) { return Rational(v); }

const char* kSampleTiling =
    "3 2\n"
    "1 1: 1,1 1,2 2,1 3,3\n"
    "1 2: 2,2 2,3 3,2\n"
    "2 1: 1,1 1,3 2,2 3,1\n"
    "2 2: 2,3 3,1 3,3\n";

// Explicit disks that overlap some lattice disk.
std::size_t lattice_clashes(const Instance& inst) {
  std::size_t bad = 0;
  for (const Disk& d : inst.disks)
    for (const Point& q : blocking_points(inst, d.center, 2))
      if (overlap(d, Disk{q}) != Tri::no) ++bad;
  return bad;
}

void expect_round_trip(const Instance& inst) {
  Instance back = parse_instance(write_instance(inst));
  ASSERT_EQ(back.disks.size(), inst.disks.size());
  EXPECT_EQ(back.k, inst.k);
  EXPECT_EQ(back.d2, inst.d2);
  EXPECT_EQ(back.variant, inst.variant);
  for (std::size_t i = 0; i < inst.disks.size(); ++i) EXPECT_TRUE(exactly_equal(back.disks[i].center, inst.disks[i].center));
  ASSERT_EQ(back.blocks.size(), inst.blocks.size());
  for (std::size_t b = 0; b < inst.blocks.size(); ++b) EXPECT_EQ(back.blocks[b].holes.size(), inst.blocks[b].holes.size());
}

}  // namespace

TEST(Random, EmptyAndDeterministic) {
  EXPECT_TRUE(gen_random(0, Q(10), 1).disks.empty());
  Instance a = gen_random(30, Q(10), 42), b = gen_random(30, Q(10), 42), c = gen_random(30, Q(10), 43);
  ASSERT_EQ(a.disks.size(), 30u);
  bool differs = false;
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_TRUE(exactly_equal(a.disks[i].center, b.disks[i].center));
    differs = differs || !exactly_equal(a.disks[i].center, c.disks[i].center);
    for (const Scalar* s : {&a.disks[i].center.x, &a.disks[i].center.y}) {
      const Rational& q = *s->rational();
      EXPECT_TRUE(sgn(q) >= 0 && q <= 10);
      EXPECT_EQ(Rational(q * 4).get_den(), 1);
    }
  }
  EXPECT_TRUE(differs);
}

TEST(Colocated, StackAnswers) {
  EXPECT_EQ(solve(gen_colocated(4, 2, Q(1000000))).verdict, Answer::Verdict::no);
  EXPECT_EQ(solve(gen_colocated(1, 0, Q(0))).verdict, Answer::Verdict::yes);
  Instance s = gen_colocated(3, 2, Q(36));
  Answer a = solve(s);
  ASSERT_EQ(a.verdict, Answer::Verdict::yes);
  EXPECT_TRUE(validate_witness(s, a.witness, ValidationMode::exact()).accepted());
}

TEST(Appending, FrameCountsAndErrors) {
  AppendingInstance f = gen_appending_frame(216, 1);
  EXPECT_EQ(f.packing.size(), 428u);  // four families of 108 sharing four corners
  EXPECT_EQ(f.border, 428u);
  EXPECT_EQ(is_packing(std::span<const Disk>(f.packing)).status, PackingCheck::Status::ok);
  EXPECT_THROW(gen_appending_frame(216, 1, {Disk{make_point(Q(1), Q(1))}}), GeneratorError);
  EXPECT_THROW(gen_appending_frame(215, 1), GeneratorError);
  EXPECT_THROW(gen_appending_frame(216, 22), GeneratorError);
  EXPECT_NO_THROW(gen_appending_frame(216, 0));
  AppendingInstance g = gen_appending_frame(216, 2, {Disk{make_point(Q(5), Q(5))}, Disk{make_point(Q(7), Q(5))}});
  EXPECT_EQ(g.packing.size(), 430u);
}

TEST(CrossCompose, ClaimFourExact) {
  ClaimFourReport r = claim_four(3, 216);
  EXPECT_EQ(r.d, Q(944784));
  EXPECT_TRUE(r.all());
  // Recheck independently from the stored s and h.
  const Rational a = 216;
  EXPECT_LE((a + r.h) * (a + r.h) + a * a, r.d * r.d);
  EXPECT_GT(r.s * r.s + (r.h - 6) * (r.h - 6), r.d * r.d);
  EXPECT_TRUE(claim_four(5, 240).all());
  EXPECT_THROW(claim_four(2, 216), GeneratorError);
}

TEST(CrossCompose, StructureAndBudget) {
  std::vector<AppendingInstance> in(3, gen_appending_frame(216, 2));
  Composition c = gen_crosscompose(in);
  const Instance& inst = c.instance;
  EXPECT_EQ(inst.k, 5);
  EXPECT_EQ(inst.d2, Q(944784) * Q(944784));
  ASSERT_EQ(c.stack.size(), 4u);
  for (std::size_t i : c.stack) EXPECT_TRUE(exactly_equal(inst.disks[i].center, inst.disks[c.stack[0]].center));
  ASSERT_EQ(c.interesting.size(), 3u);
  for (const auto& g : c.interesting) EXPECT_EQ(g.size(), 2u);

  std::vector<Point> rest;
  std::set<std::size_t> skip(c.stack.begin() + 1, c.stack.end());
  for (std::size_t i = 0; i < inst.disks.size(); ++i)
    if (!skip.count(i)) rest.push_back(inst.disks[i].center);
  EXPECT_EQ(is_packing(std::span<const Point>(rest)).status, PackingCheck::Status::ok);
  EXPECT_EQ(lattice_clashes(inst), 0u);
  expect_round_trip(inst);

  std::vector<AppendingInstance> mixed{gen_appending_frame(216, 2), gen_appending_frame(218, 2), gen_appending_frame(216, 2)};
  EXPECT_THROW(gen_crosscompose(mixed), GeneratorError);
  EXPECT_THROW(gen_crosscompose(std::vector<AppendingInstance>(2, gen_appending_frame(216, 2))), GeneratorError);
}

TEST(CrossCompose, YesSourceGivesValidWitness) {
  // An empty frame has room for kappa more disks, so the composition is Yes.
  const long long kappa = 2, a = 216;
  std::vector<AppendingInstance> in(3, gen_appending_frame(a, kappa));
  Composition c = gen_crosscompose(in);
  const Instance& inst = c.instance;
  Witness w;
  const auto& mine = c.interesting[0];
  // Interesting disks go into the empty square R_1.
  for (std::size_t t = 0; t < mine.size(); ++t)
    w.moves.emplace(mine[t], make_point(Q(101 + 4 * static_cast<long>(t)), Q(101)));
  // kappa + 1 stack disks take the vacated row of G_1.
  const Rational y = *inst.disks[mine[0]].center.y.rational();
  const Rational x0 = *inst.disks[mine[0]].center.x.rational() - 1;
  for (long long s = 0; s <= kappa; ++s) w.moves.emplace(c.stack[s], make_point(x0 + Q(2 * static_cast<long>(s)), y));
  EXPECT_EQ(static_cast<long long>(w.moves.size()), inst.k);
  ValidationResult v = validate_witness(inst, w, ValidationMode::exact());
  EXPECT_TRUE(v.accepted()) << v.describe(ValidationMode::exact());
}

TEST(GridTiling, ParseAndWrite) {
  GridTilingInstance gt = parse_gridtiling(kSampleTiling);
  EXPECT_EQ(gt.n, 3);
  EXPECT_EQ(gt.kappa, 2);
  EXPECT_EQ(gt.sets.at({1, 1}).size(), 4u);
  GridTilingInstance back = parse_gridtiling(write_gridtiling(gt));
  EXPECT_EQ(back.sets, gt.sets);
  EXPECT_THROW(parse_gridtiling("3 2\n1 1: 1,1\n"), ParseError);
  EXPECT_THROW(parse_gridtiling("1 1\n1 1: 1;1\n"), ParseError);
  EXPECT_THROW(parse_gridtiling("1 1\n1 1:\n"), ParseError);
  EXPECT_THROW(parse_gridtiling("1 1\n1 1: 2,1\n"), ParseError);
}

TEST(GridTiling, SampleParameters) {
  GridTilingParams p = gridtiling_params(parse_gridtiling(kSampleTiling));
  EXPECT_EQ(p.L, 300);
  EXPECT_EQ(p.d, 5400);
  EXPECT_EQ(p.m(1, 1), 3 * 2 - 1);
  // Displayed sum evaluated by hand: 12 + 21 + 1 + 10 + 14.
  EXPECT_EQ(p.k, 58);
}

TEST(GridTiling, SampleWitnessValidates) {
  GridTilingInstance gt = parse_gridtiling(kSampleTiling);
  GridTilingBuild b = build_gridtiling(gt);
  EXPECT_EQ(b.instance.k, 58);
  EXPECT_EQ(b.instance.variant, Variant::rectilinear);
  EXPECT_EQ(b.instance.d2, Q(5400) * Q(5400));
  // The printed solution picks (2,1) in S(2,1), which is not listed there.
  EXPECT_THROW(gridtiling_witness(gt, b.instance, {2, 2}, {1, 3}), GeneratorError);
  Witness w = gridtiling_witness(gt, b.instance, {2, 3}, {1, 3});
  EXPECT_EQ(w.moves.size(), 58u);
  ValidationResult v = validate_witness(b.instance, w, ValidationMode::exact());
  EXPECT_TRUE(v.accepted()) << v.describe(ValidationMode::exact());

  Witness short_one = w;
  short_one.moves.erase(short_one.moves.begin());
  EXPECT_FALSE(validate_witness(b.instance, short_one, ValidationMode::exact()).accepted());
}

TEST(GridTiling, PackingApartFromStacks) {
  GridTilingBuild b = build_gridtiling(parse_gridtiling(kSampleTiling));
  std::set<std::size_t> stacked(b.stacked.begin(), b.stacked.end());
  std::vector<Point> rest;
  for (std::size_t i = 0; i < b.instance.disks.size(); ++i)
    if (!stacked.count(i)) rest.push_back(b.instance.disks[i].center);
  EXPECT_EQ(is_packing(std::span<const Point>(rest)).status, PackingCheck::Status::ok);
  EXPECT_EQ(lattice_clashes(b.instance), 0u);
  for (const Point& p : rest) {
    EXPECT_EQ(p.x.rational()->get_den(), 1);
    EXPECT_EQ(p.y.rational()->get_den(), 1);
  }
}

TEST(GridTiling, AdjacentColumnsAreOffsetByOne) {
  GridTilingBuild b = build_gridtiling(parse_gridtiling(kSampleTiling));
  std::map<std::string, const GadgetInfo*> by;
  for (const GadgetInfo& g : b.gadgets) by[g.name] = &g;
  // PG(a,b,i,1) and PG(a,b',i,2) share a row of the cell grid.
  const GadgetInfo* left = by.at("PG(2,1,1,1)");
  const GadgetInfo* right = by.at("PG(2,3,1,2)");
  ASSERT_EQ(left->gy, right->gy);
  const Rational yl = *b.instance.disks[left->interesting[0]].center.y.rational();
  const Rational yr = *b.instance.disks[right->interesting[0]].center.y.rational();
  EXPECT_EQ(yr - yl, Q(1));
  EXPECT_EQ(left->interesting.size(), 5u);
  EXPECT_EQ(right->interesting.size(), 3u);
}

TEST(GridTiling, SmallestCase) {
  GridTilingInstance gt = parse_gridtiling("1 1\n1 1: 1,1\n");
  GridTilingBuild b = build_gridtiling(gt);
  EXPECT_EQ(b.instance.k, 18);
  Witness w = gridtiling_witness(gt, b.instance, {1}, {1});
  EXPECT_EQ(w.moves.size(), 18u);
  EXPECT_TRUE(validate_witness(b.instance, w, ValidationMode::exact()).accepted());
  expect_round_trip(b.instance);
}
