#include <gtest/gtest.h>

#include "evomap/change.hpp"
#include "evomap/error.hpp"

using namespace evomap;

namespace {
ConceptId C(const char* s) { return ConceptId(s); }
}  // namespace

TEST(ChangeOp, NamesRoundTrip) {
  for (std::size_t i = 0; i < kOpKindCount; ++i) {
    auto k = static_cast<OpKind>(i);
    auto back = op_kind_from_name(op_name(k));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, k);
  }
  EXPECT_FALSE(op_kind_from_name("addc").has_value());
  EXPECT_TRUE(is_basic(OpKind::MapA));
  EXPECT_FALSE(is_basic(OpKind::Substitute));
}

TEST(ChangeOp, CanonicalForms) {
  EXPECT_EQ(canonical_form(op::addC(C("SLC"))), "addC(SLC)");
  EXPECT_EQ(canonical_form(op::addR({C("Solid State Disks"), "subCatOf", C("Drives & Storage")})),
            "addR((\"Solid State Disks\",subCatOf,\"Drives & Storage\"))");
  EXPECT_EQ(canonical_form(op::merge(make_set({C("DVD-ROM"), C("CD-RW")}), C("Other"))),
            "merge({CD-RW,DVD-ROM},Other)");
  EXPECT_EQ(canonical_form(op::move(C("1.8"), C("Hard Disc Drives"), C("Notebook"))),
            "move(1.8,\"Hard Disc Drives\",Notebook)");
  EXPECT_EQ(canonical_form(op::mapA({C("x"), "obsolete", "false"}, {C("x"), "obsolete", "true"})),
            "mapA((x,obsolete,false),(x,obsolete,true))");
}

TEST(ChangeOp, SetsAreNormalized) {
  auto s = make_set({C("b"), C("a"), C("b")});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], C("a"));
  EXPECT_EQ(set_union(s, make_set({C("c")})).size(), 3u);
  EXPECT_TRUE(set_contains(s, C("b")));
  EXPECT_FALSE(set_contains(s, C("c")));
}

TEST(ChangeOp, WellFormedness) {
  EXPECT_NO_THROW(check_well_formed(op::split(C("a"), make_set({C("b"), C("c")}))));
  ChangeOp bad = op::addC(C("a"));
  bad.concepts.push_back(C("b"));
  EXPECT_THROW(check_well_formed(bad), Error);
  ChangeOp empty_set;
  empty_set.kind = OpKind::AddLeaf;
  empty_set.concepts = {C("a")};
  EXPECT_THROW(check_well_formed(empty_set), Error);
  ChangeOp unsorted = op::merge(make_set({C("a"), C("b")}), C("t"));
  std::swap(unsorted.set[0], unsorted.set[1]);
  EXPECT_THROW(check_well_formed(unsorted), Error);
}

TEST(ChangeOp, InverseIsInvolution) {
  std::vector<ChangeOp> ops{
      op::addC(C("a")),
      op::mapC(C("a"), C("b")),
      op::addR({C("a"), "is_a", C("b")}),
      op::mapR({C("a"), "is_a", C("b")}, {C("a"), "part_of", C("b")}),
      op::addA({C("a"), "name", "x"}),
      op::mapA({C("a"), "name", "x"}, {C("a"), "name", "y"}),
      op::substitute(C("a"), C("b")),
      op::move(C("a"), C("p"), C("q")),
      op::toObsolete(C("a")),
      op::addLeaf(C("a"), {C("p")}),
      op::merge(make_set({C("a"), C("b")}), C("t")),
      op::addSubGraph(C("r"), make_set({C("a")})),
  };
  for (const auto& o : ops) EXPECT_EQ(invert(invert(o)), o) << canonical_form(o);

  EXPECT_EQ(invert(op::addC(C("a"))), op::delC(C("a")));
  EXPECT_EQ(invert(op::mapC(C("a"), C("b"))), op::mapC(C("b"), C("a")));
  EXPECT_EQ(invert(op::move(C("a"), C("p"), C("q"))), op::move(C("a"), C("q"), C("p")));
  EXPECT_EQ(invert(op::toObsolete(C("a"))), op::revokeObsolete(C("a")));
  EXPECT_EQ(invert(op::addLeaf(C("a"), {C("p")})), op::delLeaf(C("a"), {C("p")}));
  EXPECT_EQ(invert(op::merge(make_set({C("a"), C("b")}), C("t"))), op::split(C("t"), make_set({C("a"), C("b")})));
  EXPECT_EQ(invert(op::addSubGraph(C("r"), {C("a")})), op::delSubGraph(C("r"), {C("a")}));
}

TEST(DiffMapping, DeduplicatesLiveOps) {
  DiffMapping d(DiffKind::Working);
  auto a = d.add(op::addC(C("a")));
  auto b = d.add(op::addC(C("b")));
  auto again = d.add(op::addC(C("a")), Phase::Complex, "x", {b});
  EXPECT_EQ(again, a);
  EXPECT_EQ(d.records().size(), 2u);
  EXPECT_EQ(d.record(a).consumed, std::vector<OpId>{b});
  EXPECT_EQ(d.live_count(), 2u);

  d.eliminate(a, "r1");
  EXPECT_FALSE(d.record(a).live);
  EXPECT_EQ(d.record(a).eliminated_by, "r1");
  EXPECT_FALSE(d.has_live(op::addC(C("a"))));
  d.eliminate(a, "r2");
  EXPECT_EQ(d.record(a).eliminated_by, "r1");

  auto fresh = d.add(op::addC(C("a")));
  EXPECT_NE(fresh, a);
  EXPECT_TRUE(d.has_live(op::addC(C("a"))));
  EXPECT_THROW(d.record(99), Error);
  EXPECT_THROW(d.add(op::addC(C("z")), Phase::Basic, "", {42}), Error);
}

TEST(DiffMapping, LiveIdsAreCanonicallyOrdered) {
  DiffMapping d;
  d.add(op::delC(C("z")));
  d.add(op::addC(C("m")));
  d.add(op::addC(C("b")));
  auto ops = d.live_ops();
  ASSERT_EQ(ops.size(), 3u);
  EXPECT_EQ(canonical_form(ops[0]), "addC(b)");
  EXPECT_EQ(canonical_form(ops[2]), "delC(z)");
  EXPECT_EQ(d.live_ids(OpKind::AddC).size(), 2u);
}

TEST(DiffMapping, CopyKeepsIndex) {
  DiffMapping d;
  auto a = d.add(op::addC(C("a")));
  DiffMapping copy = d;
  copy.eliminate(a);
  EXPECT_TRUE(d.has_live(op::addC(C("a"))));
  EXPECT_FALSE(copy.has_live(op::addC(C("a"))));
  copy.add(op::addC(C("b")));
  EXPECT_EQ(d.live_count(), 1u);
}

TEST(DiffMapping, LineageFlattening) {
  DiffMapping d(DiffKind::Compact);
  auto ac = d.add(op::addC(C("x")));
  auto ar = d.add(op::addR({C("x"), "is_a", C("p")}));
  auto leaf = d.add(op::addLeaf(C("x"), {C("p")}), Phase::Complex, "c5", {ac, ar});
  auto ac2 = d.add(op::addC(C("g")));
  auto ar2 = d.add(op::addR({C("g"), "is_a", C("p")}));
  auto sub = d.add(op::addSubGraph(C("g"), {C("x")}), Phase::Complex, "c9", {leaf, ac2, ar2});
  for (auto id : {ac, ar, leaf, ac2, ar2}) d.eliminate(id);

  auto leaves = lineage_leaves(d, sub);
  EXPECT_EQ(leaves.size(), 4u);
  auto flat = expand_to_basic(d);
  EXPECT_EQ(flat.kind(), DiffKind::Basic);
  EXPECT_EQ(flat.live_count(), 4u);
  EXPECT_TRUE(flat.has_live(op::addR({C("g"), "is_a", C("p")})));

  DiffMapping orphan;
  orphan.add(op::toObsolete(C("x")), Phase::Complex);
  EXPECT_THROW(expand_to_basic(orphan), Error);
}

TEST(DiffMapping, InvertSwapsLabelsAndKeepsLineage) {
  DiffMapping d(DiffKind::Compact, "old", "new");
  auto a = d.add(op::addC(C("x")), Phase::Basic, "b1");
  d.add(op::addLeaf(C("x"), {C("p")}), Phase::Complex, "c5", {a});
  d.eliminate(a, "c5");
  auto inv = invert_diff(d);
  EXPECT_EQ(inv.old_label(), "new");
  EXPECT_EQ(inv.new_label(), "old");
  EXPECT_TRUE(inv.has_live(op::delLeaf(C("x"), {C("p")})));
  EXPECT_EQ(inv.record(2).consumed, std::vector<OpId>{1});
  EXPECT_EQ(inv.record(1).eliminated_by, "c5");
  EXPECT_TRUE(equivalent(invert_diff(inv), d));
}

TEST(DiffMapping, EquivalenceIgnoresIds) {
  DiffMapping a, b;
  auto x1 = a.add(op::addC(C("x")));
  auto y1 = a.add(op::addC(C("y")));
  a.add(op::merge(make_set({C("x"), C("y")}), C("t")), Phase::Complex, "c7", {x1, y1});
  auto y2 = b.add(op::addC(C("y")));
  auto x2 = b.add(op::addC(C("x")));
  b.add(op::merge(make_set({C("x"), C("y")}), C("t")), Phase::Complex, "c7", {y2, x2});
  EXPECT_TRUE(equivalent(a, b));
  b.add(op::addC(C("z")));
  EXPECT_FALSE(equivalent(a, b));
}
