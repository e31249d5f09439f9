#include "evomap/migration.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "evomap/diff.hpp"
#include "evomap/error.hpp"

namespace evomap {

namespace {

class Migrator {
 public:
  Migrator(const Ontology& o, const MigrationOptions& options, MigrationReport& report)
      : concepts_(o.concepts().begin(), o.concepts().end()),
        relationships_(o.relationships().begin(), o.relationships().end()),
        attributes_(o.attributes().begin(), o.attributes().end()),
        options_(options),
        report_(report) {}

  template <typename T>
  void remove(std::set<T>& s, const T& e, const ChangeOp& op) {
    if (s.erase(e) == 0) problem(op, "element is absent");
  }

  template <typename T>
  void insert(std::set<T>& s, const T& e, const ChangeOp& op) {
    if (!s.insert(e).second) problem(op, "element is already present");
  }

  void perform(OpKind stage, const std::vector<const ChangeOp*>& ops) {
    switch (stage) {
      case OpKind::DelA:
        for (auto* o : ops) remove(attributes_, o->attribute(), *o);
        break;
      case OpKind::DelR:
        for (auto* o : ops) remove(relationships_, o->relationship(), *o);
        break;
      case OpKind::DelC:
        for (auto* o : ops) remove(concepts_, o->subject(), *o);
        break;
      case OpKind::MapC: {
        std::set<ConceptId> domains, ranges;
        for (auto* o : ops)
          if (domains.insert(o->concepts[0]).second) remove(concepts_, o->concepts[0], *o);
        for (auto* o : ops)
          if (ranges.insert(o->concepts[1]).second) insert(concepts_, o->concepts[1], *o);
        break;
      }
      case OpKind::MapA:
        for (auto* o : ops) remove(attributes_, o->attributes[0], *o);
        for (auto* o : ops) insert(attributes_, o->attributes[1], *o);
        break;
      case OpKind::MapR:
        for (auto* o : ops) remove(relationships_, o->relationships[0], *o);
        for (auto* o : ops) insert(relationships_, o->relationships[1], *o);
        break;
      case OpKind::AddC:
        for (auto* o : ops) insert(concepts_, o->subject(), *o);
        break;
      case OpKind::AddA:
        for (auto* o : ops) insert(attributes_, o->attribute(), *o);
        break;
      case OpKind::AddR:
        for (auto* o : ops) insert(relationships_, o->relationship(), *o);
        break;
      default:
        throw MigrationError("cannot migrate with complex op kind " + std::string(op_name(stage)));
    }
    report_.applied += ops.size();
  }

  Ontology finish(std::string label) {
    return Ontology(std::move(label), std::move(concepts_), std::move(relationships_), std::move(attributes_));
  }

 private:
  void problem(const ChangeOp& op, const std::string& what) {
    std::string msg = "mapping inconsistent with version: " + canonical_form(op) + ": " + what;
    if (!options_.lenient) throw MigrationError(msg);
    report_.warnings.push_back(msg);
  }

  std::set<ConceptId> concepts_;
  std::set<Relationship> relationships_;
  std::set<Attribute> attributes_;
  const MigrationOptions& options_;
  MigrationReport& report_;
};

constexpr std::array<OpKind, 9> kPerformOrder = {OpKind::DelA, OpKind::DelR, OpKind::DelC,
                                                 OpKind::MapC, OpKind::MapA, OpKind::MapR,
                                                 OpKind::AddC, OpKind::AddA, OpKind::AddR};

}  // namespace

Ontology ont_version_mig(const Ontology& o, const DiffMapping& d, const MigrationOptions& options,
                         MigrationReport* report) {
  MigrationReport local;
  MigrationReport& rep = report ? *report : local;

  std::vector<std::vector<const ChangeOp*>> staged(kOpKindCount);
  for (OpId id : d.live_ids()) {
    const ChangeOp& op = d.record(id).op;
    if (!is_basic(op.kind))
      throw MigrationError("migration needs a basic diff; found " + canonical_form(op));
    staged[static_cast<std::size_t>(op.kind)].push_back(&op);
  }

  Migrator m(o, options, rep);
  for (OpKind k : kPerformOrder) m.perform(k, staged[static_cast<std::size_t>(k)]);

  std::string label = options.version_label.empty() ? d.new_label() : options.version_label;
  Ontology out = m.finish(std::move(label));
  auto v = validate(out, options.validation);
  if (!v.ok()) throw MigrationError("migrated version is invalid: " + v.summary());
  return out;
}

std::pair<std::size_t, std::size_t> element_overlap(const Ontology& a, const Ontology& b) {
  auto ea = a.elements();
  auto eb = b.elements();
  std::size_t common = 0;
  auto i = ea.begin();
  auto j = eb.begin();
  while (i != ea.end() && j != eb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return {common, ea.size() + eb.size() - common};
}

std::string RoundtripReport::line() const {
  return "o1∩o1''=" + std::to_string(intersection) + " o1∪o1''=" + std::to_string(union_size);
}

RoundtripReport roundtrip(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                          const RuleCatalog& catalog) {
  RoundtripReport r;
  DiffMapping d = diff_basic_gen(o1, o2, m, catalog);
  Ontology o1_prime = ont_version_mig(o1, d);
  Ontology o1_second = ont_version_mig(o1_prime, invert_diff(d));
  r.forward_ok = o1_prime.same_elements(o2);
  r.backward_ok = o1_second.same_elements(o1);
  std::tie(r.intersection, r.union_size) = element_overlap(o1, o1_second);
  return r;
}

}  // namespace evomap
