#include <gtest/gtest.h>

#include "evomap/diff.hpp"
#include "evomap/error.hpp"
#include "evomap/io.hpp"
#include "evomap/migration.hpp"
#include "evomap/synth.hpp"

using namespace evomap;

namespace {

SynthResult single(EditKind kind, std::uint64_t seed, std::size_t arity = 0) {
  SynthOptions opt;
  opt.kinds = {kind};
  opt.arity = arity;
  return synthesize(seed, 120, 1, opt);
}

std::set<std::string> compact_of(const SynthResult& s) {
  return diff_evol_map_gen(s.o1, s.o2, s.match, builtin_catalog(), {AggMode::Literal}).compact.live_canonical();
}

ConceptSet ids(const std::vector<std::string>& v, std::size_t from) {
  ConceptSet out;
  for (std::size_t i = from; i < v.size(); ++i) out.push_back(ConceptId(v[i]));
  return make_set(std::move(out));
}

}  // namespace

TEST(Synth, TrivialPair) {
  auto s = synthesize(42, 1, 0);
  EXPECT_EQ(s.o1.concepts().size(), 1u);
  EXPECT_TRUE(s.o1.same_elements(s.o2));
  EXPECT_EQ(s.match, match_by_id(s.o1, s.o2));
  EXPECT_TRUE(s.script.steps.empty());
}

TEST(Synth, Deterministic) {
  auto a = synthesize(7, 50, 10);
  auto b = synthesize(7, 50, 10);
  EXPECT_EQ(serialize_ontology(a.o1), serialize_ontology(b.o1));
  EXPECT_EQ(serialize_ontology(a.o2), serialize_ontology(b.o2));
  EXPECT_EQ(serialize_match(a.match), serialize_match(b.match));
  EXPECT_EQ(serialize_script(a.script), serialize_script(b.script));
  auto c = synthesize(8, 50, 10);
  EXPECT_NE(serialize_ontology(a.o2), serialize_ontology(c.o2));
}

TEST(Synth, OutputsValidate) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    SynthOptions opt;
    opt.clean = seed % 2 == 0;
    auto s = synthesize(seed, 10 + seed * 7, 1 + seed, opt);
    EXPECT_TRUE(validate(s.o1).ok()) << seed;
    EXPECT_TRUE(validate(s.o2).ok()) << seed << ": " << validate(s.o2).summary();
    EXPECT_TRUE(validate_match(s.match, s.o1, s.o2).ok()) << seed;
    EXPECT_EQ(s.script.steps.size(), 1 + seed);
    MatchMapping replay_match;
    auto replay = apply_script(s.o1, s.script, &replay_match);
    EXPECT_TRUE(replay.same_elements(s.o2)) << seed;
    EXPECT_EQ(replay_match, s.match) << seed;
    auto basic = diff_basic_gen(s.o1, s.o2, s.match, builtin_catalog());
    EXPECT_TRUE(ont_version_mig(s.o1, basic).same_elements(s.o2)) << seed;
    EXPECT_TRUE(roundtrip(s.o1, s.o2, s.match, builtin_catalog()).passed()) << seed;
  }
}

TEST(Synth, ScriptTextRoundTrips) {
  auto s = synthesize(11, 80, 12, {false, {}, 0});
  auto text = serialize_script(s.script);
  EXPECT_EQ(text.rfind("#evomap-script v1 seed=11", 0), 0u);
  auto back = parse_script(text);
  EXPECT_EQ(back.seed, 11u);
  EXPECT_EQ(serialize_script(back), text);
  EXPECT_THROW(parse_script("#evomap-script v1 seed=1\nexplode\tc1\n"), ParseError);
}

TEST(Synth, ApplyScriptBasics) {
  auto s = synthesize(3, 5, 0);
  EXPECT_TRUE(apply_script(s.o1, EditScript{}).same_elements(s.o1));

  EditScript add;
  add.steps.push_back({EditKind::InsertLeaf, {"x", "c0", "is_a"}});
  auto o = apply_script(s.o1, add);
  EXPECT_TRUE(o.contains(ConceptId("x")));
  EXPECT_TRUE(o.contains(Relationship{ConceptId("x"), "is_a", ConceptId("c0")}));
  EXPECT_EQ(o.concepts().size(), s.o1.concepts().size() + 1);

  EditScript bad;
  bad.steps.push_back({EditKind::DeleteLeaf, {"nope"}});
  EXPECT_THROW(apply_script(s.o1, bad), Error);
}

TEST(Synth, InfeasibleParameters) {
  SynthOptions opt;
  opt.kinds = {EditKind::DeleteLeaf};
  EXPECT_THROW(synthesize(1, 5, 50, opt), Error);
  EXPECT_THROW(synthesize(1, 0, 0), Error);
}

TEST(GroundTruth, KWayMerge) {
  for (std::size_t k : {2u, 3u, 5u, 8u}) {
    auto s = single(EditKind::Merge, 100 + k, k);
    ASSERT_EQ(s.script.steps.size(), 1u);
    const auto& args = s.script.steps[0].args;
    ASSERT_EQ(args.size(), k);
    auto expected = canonical_form(op::merge(ids(args, 0), ConceptId(args[0])));
    auto c = compact_of(s);
    EXPECT_TRUE(c.count(expected)) << expected;
    std::size_t merges = 0;
    for (const auto& x : c) merges += x.rfind("merge(", 0) == 0;
    EXPECT_EQ(merges, 1u);
  }
}

TEST(GroundTruth, KWaySplit) {
  for (std::size_t k : {2u, 4u, 7u}) {
    auto s = single(EditKind::Split, 200 + k, k);
    const auto& args = s.script.steps.at(0).args;
    auto expected = canonical_form(op::split(ConceptId(args[0]), ids(args, 0)));
    EXPECT_TRUE(compact_of(s).count(expected)) << expected;
  }
}

TEST(GroundTruth, MoveSubgraphsObsolete) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto mv = single(EditKind::Reparent, seed);
    const auto& a = mv.script.steps.at(0).args;
    EXPECT_TRUE(compact_of(mv).count(
        canonical_form(op::move(ConceptId(a[0]), ConceptId(a[1]), ConceptId(a[2])))));

    auto ins = single(EditKind::InsertSubtree, seed);
    const auto& b = ins.script.steps.at(0).args;
    ConceptSet members;
    for (std::size_t i = 3; i < b.size(); i += 2) members.push_back(ConceptId(b[i]));
    EXPECT_TRUE(compact_of(ins).count(canonical_form(op::addSubGraph(ConceptId(b[1]), make_set(members)))));

    auto del = single(EditKind::DeleteSubtree, seed);
    const auto& root = del.script.steps.at(0).args.at(0);
    ConceptSet gone;
    for (const auto& c : del.o1.concepts())
      if (!del.o2.contains(c) && c.value != root) gone.push_back(c);
    EXPECT_TRUE(compact_of(del).count(canonical_form(op::delSubGraph(ConceptId(root), make_set(gone)))));

    auto obs = single(EditKind::SetObsolete, seed);
    EXPECT_TRUE(compact_of(obs).count(
        canonical_form(op::toObsolete(ConceptId(obs.script.steps.at(0).args.at(0))))));
  }
}
