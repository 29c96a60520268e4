#include <gtest/gtest.h>

#include <random>

#include "dispersal/instance.hpp"

using namespace dispersal;

namespace {

const char* kThreeCollinear =
    "DISKDISPERSAL v1\n"
    "variant: euclidean            # or: rectilinear\n"
    "k: 1\n"
    "d2: 3\n"
    "disks: 3\n"
    "0 0\n"
    "1 0\n"
    "2 0\n"
    "blocks: 1\n"
    "-10 -10 30 30 step 2 holes 1\n"
    "-1 -1 3 1\n";

Instance triangle_instance() {
  Instance inst;
  inst.k = 1;
  inst.d2 = 3;
  for (long x : {0, 1, 2}) inst.disks.push_back(Disk{make_point(x, 0)});
  return inst;
}

Witness lift_middle() {
  Witness w;
  w.moves.emplace(1, Point{Scalar(1), Scalar(QuadExt::make(0, 1, 3))});
  return w;
}

int parse_error_line(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(InstanceIo, HeaderOnlyIsEmpty) {
  Instance inst = parse_instance("DISKDISPERSAL v1\nvariant: rectilinear\nk: 0\nd2: 0\ndisks: 0\n");
  EXPECT_EQ(inst.variant, Variant::rectilinear);
  EXPECT_TRUE(inst.disks.empty());
  EXPECT_TRUE(inst.blocks.empty());
}

TEST(InstanceIo, ParsesFormatExample) {
  Instance inst = parse_instance(kThreeCollinear);
  ASSERT_EQ(inst.disks.size(), 3u);
  EXPECT_EQ(inst.k, 1);
  EXPECT_EQ(inst.d2, 3);
  ASSERT_EQ(inst.blocks.size(), 1u);
  EXPECT_EQ(inst.blocks[0].holes.size(), 1u);
  EXPECT_EQ(inst.blocks[0].step, 2);
  Instance again = parse_instance(write_instance(inst));
  EXPECT_EQ(write_instance(again), write_instance(inst));
}

TEST(InstanceIo, NegativeBudgetReportsLine) {
  EXPECT_EQ(parse_error_line("DISKDISPERSAL v1\nvariant: euclidean\nk: -1\nd2: 3\ndisks: 0\n"), 3);
  EXPECT_EQ(parse_error_line("DISKDISPERSAL v1\n# c\nvariant: euclidean\nk: 1\nd2: -3\ndisks: 0\n"), 5);
  EXPECT_EQ(parse_error_line("DISKDISPERSAL v1\nvariant: euclidean\nk: 1\nd2: 3\ndisks: 1\n0 1/0\n"), 6);
  EXPECT_EQ(parse_error_line("DISKDISPERSAL v2\n"), 1);
  EXPECT_EQ(parse_error_line("DISKDISPERSAL v1\nvariant: euclidean\nk: 1\nd2: 3\ndisks: 2\n0 0\n"), 7);
}

TEST(InstanceIo, TriangleRoundTripIsByteIdentical) {
  std::string text = write_instance(triangle_instance());
  EXPECT_EQ(text,
            "DISKDISPERSAL v1\nvariant: euclidean\nk: 1\nd2: 3\ndisks: 3\n0 0\n1 0\n2 0\nblocks: 0\n");
  EXPECT_EQ(write_instance(parse_instance(text)), text);
}

TEST(InstanceIo, WitnessFormat) {
  EXPECT_EQ(write_witness(Witness{}), "DISPERSALMOVES v1\nmoves: 0\n");
  std::string text = write_witness(lift_middle());
  EXPECT_EQ(text, "DISPERSALMOVES v1\nmoves: 1\n1 -> 1 0+1*sqrt(3)\n");
  Witness back = parse_witness(text);
  ASSERT_EQ(back.moves.size(), 1u);
  EXPECT_TRUE(exactly_equal(back.moves.at(1), lift_middle().moves.at(1)));
  EXPECT_THROW(parse_witness("DISPERSALMOVES v1\nmoves: 2\n1 -> 0 0\n1 -> 2 2\n"), ParseError);
}

TEST(InstanceIo, ValidateTriangleWitness) {
  Instance inst = triangle_instance();
  ValidationResult r = validate_witness(inst, lift_middle(), ValidationMode::exact());
  EXPECT_EQ(r.describe(ValidationMode::exact()), "accept");
  inst.k = 0;
  EXPECT_EQ(validate_witness(inst, lift_middle(), ValidationMode::exact()).reason, "budget");
}

TEST(InstanceIo, ValidateRejections) {
  Instance inst;
  inst.k = 1;
  inst.d2 = 1;
  inst.disks = {Disk{make_point(0, 0)}, Disk{make_point(1, 0)}};
  ValidationResult r = validate_witness(inst, Witness{}, ValidationMode::exact());
  EXPECT_EQ(r.describe(ValidationMode::exact()), "reject(packing, 0 1)");
  Witness far;
  far.moves.emplace(1, make_point(3, 0));
  EXPECT_EQ(validate_witness(inst, far, ValidationMode::exact()).reason, "move");
  Witness bad;
  bad.moves.emplace(7, make_point(3, 0));
  EXPECT_EQ(validate_witness(inst, bad, ValidationMode::exact()).verdict, ValidationResult::Verdict::error);
  inst.variant = Variant::rectilinear;
  inst.d2 = 4;
  Witness diag;
  diag.moves.emplace(1, make_point(2, 1));
  EXPECT_EQ(validate_witness(inst, diag, ValidationMode::exact()).reason, "move");
  Witness axis;
  axis.moves.emplace(1, make_point(3, 0));
  EXPECT_TRUE(validate_witness(inst, axis, ValidationMode::exact()).accepted());
}

TEST(InstanceIo, TolerantAcceptsTildeWitness) {
  Instance inst = triangle_instance();
  Witness w = parse_witness("DISPERSALMOVES v1\nmoves: 1\n1 -> 1 1.7320508075688772~\n");
  ValidationMode tol = ValidationMode::tolerance(default_tolerance());
  ValidationResult r = validate_witness(inst, w, tol);
  EXPECT_EQ(r.describe(tol), "accept(1e-09)");
  EXPECT_NE(validate_witness(inst, w, ValidationMode::exact()).verdict, ValidationResult::Verdict::accept);
}

TEST(InstanceIo, BlockMembership) {
  Instance inst = parse_instance(kThreeCollinear);
  const LatticeBlock& b = inst.blocks[0];
  EXPECT_EQ(b.columns(), 21);
  EXPECT_EQ(b.rows(), 21);
  EXPECT_EQ(b.materialize().size(), 21u * 21u - 2u);  // hole holds (0,0) and (2,0)
  EXPECT_FALSE(b.is_member(5, 5));
  EXPECT_TRUE(b.is_member(4, 5));
}

TEST(InstanceIo, BlockConflictsAreDetected) {
  Instance inst = parse_instance(kThreeCollinear);
  // Explicit disks at (0,0),(1,0),(2,0) overlap each other; lift the middle.
  ValidationResult r = validate_witness(inst, lift_middle(), ValidationMode::exact());
  EXPECT_EQ(r.reason, "block");
}

TEST(InstanceIo, ExactAcceptImpliesTolerantAccept) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> coord(-12, 12), den(1, 2);
  int accepted = 0;
  for (int round = 0; round < 1000; ++round) {
    Instance inst;
    inst.k = 2;
    inst.d2 = 9;
    for (long i = 0; i < 5; ++i) inst.disks.push_back(Disk{make_point(4 * i + coord(rng) % 2, 0)});
    Witness w;
    for (int m = 0; m < 2; ++m)
      w.moves[static_cast<std::size_t>(m * 2)] = make_point(Rational(coord(rng), den(rng)), Rational(coord(rng) % 4));
    ValidationResult exact = validate_witness(inst, w, ValidationMode::exact());
    if (!exact.accepted()) continue;
    ++accepted;
    for (Rational eps : {Rational(1, 1000000000), Rational(1, 100), Rational(1)})
      ASSERT_TRUE(validate_witness(inst, w, ValidationMode::tolerance(eps)).accepted());
    Instance after = apply_witness(inst, w);
    ASSERT_TRUE(validate_witness(after, Witness{}, ValidationMode::exact()).accepted());
  }
  EXPECT_GT(accepted, 20);
}

TEST(InstanceIo, MaterializedBlocksGiveSameVerdict) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> coord(-6, 16), den(1, 2);
  for (int round = 0; round < 200; ++round) {
    Instance inst;
    inst.k = 1;
    inst.d2 = 16;
    LatticeBlock b{0, 0, 10, 8, 2, {Rect{3, 1, 7, 5}}};
    inst.blocks.push_back(b);
    inst.disks.push_back(Disk{make_point(Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng)))});
    Witness w;
    if (round % 2) w.moves[0] = make_point(Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng)));
    ValidationResult implicit = validate_witness(inst, w, ValidationMode::exact());
    ValidationResult explicit_ = validate_witness(materialize_blocks(inst), w, ValidationMode::exact());
    ASSERT_EQ(implicit.accepted(), explicit_.accepted()) << implicit.reason << " / " << explicit_.reason;
  }
}
