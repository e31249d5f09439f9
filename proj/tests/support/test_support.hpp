#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "evomap/change.hpp"
#include "evomap/io.hpp"
#include "evomap/matching.hpp"
#include "evomap/ontology.hpp"
#include "evomap/synth.hpp"

namespace evomap::test_support {

inline std::string fixture_path(const std::string& name) {
  return std::string(EVOMAP_FIXTURE_DIR) + "/" + name;
}

struct Fixture {
  Ontology o1;
  Ontology o2;
  MatchMapping match;
};

inline Fixture running_example() {
  Fixture f;
  f.o1 = parse_ontology(read_file(fixture_path("old.ont")));
  f.o2 = parse_ontology(read_file(fixture_path("new.ont")));
  f.match = parse_match(read_file(fixture_path("match.tsv")), f.o1, f.o2);
  return f;
}

struct CorpusCase {
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::size_t edits = 0;
  bool clean = true;
};

/// Log-spaced sizes between 10 and 2000 with 10% edits; every fourth case
/// uses overlapping edits.
inline std::vector<CorpusCase> corpus_plan(std::size_t count = 200) {
  std::vector<CorpusCase> plan;
  for (std::size_t i = 0; i < count; ++i) {
    double t = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
    auto size = static_cast<std::size_t>(std::lround(10.0 * std::pow(200.0, t)));
    plan.push_back({1000 + i, size, std::max<std::size_t>(1, size / 10), i % 4 != 3});
  }
  return plan;
}

inline SynthResult make_case(const CorpusCase& c) {
  SynthOptions opt;
  opt.clean = c.clean;
  return synthesize(c.seed, c.size, c.edits, opt);
}

/// Expected concept-level basic ops computed from set logic over the match.
inline std::set<std::string> expected_concept_ops(const Ontology& o1, const Ontology& o2,
                                                  const MatchMapping& m) {
  std::map<ConceptId, std::size_t> out_deg, in_deg;
  for (const auto& [a, b] : m.pairs()) {
    ++out_deg[a];
    ++in_deg[b];
  }
  std::set<std::string> ops;
  for (const auto& c : o2.concepts())
    if (!in_deg.count(c)) ops.insert(canonical_form(op::addC(c)));
  for (const auto& c : o1.concepts())
    if (!out_deg.count(c)) ops.insert(canonical_form(op::delC(c)));
  for (const auto& [a, b] : m.pairs()) {
    if (a != b || out_deg[a] > 1 || in_deg[b] > 1) ops.insert(canonical_form(op::mapC(a, b)));
  }
  return ops;
}

/// Checks the completeness property of a basic diff and returns the list of
/// violations (empty when the diff is complete and minimal).
inline std::vector<std::string> completeness_violations(const Ontology& o1, const Ontology& o2,
                                                        const MatchMapping& m, const DiffMapping& d) {
  std::vector<std::string> bad;
  std::set<std::string> concept_ops;
  std::map<Relationship, int> rel_new, rel_old;
  std::map<Attribute, int> attr_new, attr_old;
  for (const auto& o : d.live_ops()) {
    switch (o.kind) {
      case OpKind::AddC:
      case OpKind::DelC:
      case OpKind::MapC:
        concept_ops.insert(canonical_form(o));
        break;
      case OpKind::AddR: ++rel_new[o.relationship()]; break;
      case OpKind::DelR: ++rel_old[o.relationship()]; break;
      case OpKind::MapR:
        ++rel_old[o.relationships.at(0)];
        ++rel_new[o.relationships.at(1)];
        break;
      case OpKind::AddA: ++attr_new[o.attribute()]; break;
      case OpKind::DelA: ++attr_old[o.attribute()]; break;
      case OpKind::MapA:
        ++attr_old[o.attributes.at(0)];
        ++attr_new[o.attributes.at(1)];
        break;
      default:
        bad.push_back("non-basic op " + canonical_form(o));
    }
  }
  auto expected = expected_concept_ops(o1, o2, m);
  for (const auto& s : expected)
    if (!concept_ops.count(s)) bad.push_back("missing " + s);
  for (const auto& s : concept_ops)
    if (!expected.count(s)) bad.push_back("unexpected " + s);

  auto check = [&](const auto& mine, const auto& other, const auto& counts, const char* what) {
    for (const auto& e : mine) {
      bool exclusive = !other.contains(e);
      auto it = counts.find(e);
      int n = it == counts.end() ? 0 : it->second;
      if (exclusive && n != 1)
        bad.push_back(std::string(what) + " exclusive element in " + std::to_string(n) + " ops: " +
                      to_string(Element(e)));
      if (!exclusive && n != 0)
        bad.push_back(std::string(what) + " shared element changed: " + to_string(Element(e)));
    }
    for (const auto& [e, n] : counts)
      if (!std::binary_search(mine.begin(), mine.end(), e))
        bad.push_back(std::string(what) + " op on unknown element: " + to_string(Element(e)));
  };
  check(o2.relationships(), o1, rel_new, "new");
  check(o1.relationships(), o2, rel_old, "old");
  check(o2.attributes(), o1, attr_new, "new");
  check(o1.attributes(), o2, attr_old, "old");
  return bad;
}

}  // namespace evomap::test_support
