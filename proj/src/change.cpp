#include "evomap/change.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

#include "evomap/error.hpp"

namespace evomap {

namespace {

constexpr std::array<std::string_view, kOpKindCount> kNames = {
    "addC",  "delC",       "mapC",       "addR",           "delR",    "mapR",    "addA",
    "delA",  "mapA",       "substitute", "move",           "toObsolete", "revokeObsolete",
    "addLeaf", "delLeaf",  "merge",      "split",          "addSubGraph", "delSubGraph"};

enum class Shape { Concept1, Concept2, Concept3, Rel1, Rel2, Attr1, Attr2, ConceptAndSet };

Shape shape_of(OpKind k) {
  switch (k) {
    case OpKind::AddC:
    case OpKind::DelC:
    case OpKind::ToObsolete:
    case OpKind::RevokeObsolete:
      return Shape::Concept1;
    case OpKind::MapC:
    case OpKind::Substitute:
      return Shape::Concept2;
    case OpKind::Move:
      return Shape::Concept3;
    case OpKind::AddR:
    case OpKind::DelR:
      return Shape::Rel1;
    case OpKind::MapR:
      return Shape::Rel2;
    case OpKind::AddA:
    case OpKind::DelA:
      return Shape::Attr1;
    case OpKind::MapA:
      return Shape::Attr2;
    default:
      return Shape::ConceptAndSet;
  }
}

ChangeOp concepts_op(OpKind k, std::vector<ConceptId> cs) {
  ChangeOp o;
  o.kind = k;
  o.concepts = std::move(cs);
  return o;
}

ChangeOp set_op(OpKind k, ConceptId c, ConceptSet s) {
  ChangeOp o;
  o.kind = k;
  o.concepts = {std::move(c)};
  o.set = make_set(std::move(s));
  return o;
}

void append_triple(std::string& out, const std::string& a, const std::string& b,
                   const std::string& c) {
  out += '(';
  out += quote_id(a);
  out += ',';
  out += quote_id(b);
  out += ',';
  out += quote_id(c);
  out += ')';
}

void append_set(std::string& out, const ConceptSet& s) {
  out += '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += quote_id(s[i].value);
  }
  out += '}';
}

}  // namespace

std::string_view op_name(OpKind k) { return kNames[static_cast<std::size_t>(k)]; }

std::optional<OpKind> op_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<OpKind>(i);
  return std::nullopt;
}

bool is_basic(OpKind k) { return static_cast<std::size_t>(k) <= static_cast<std::size_t>(OpKind::MapA); }

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Basic:
      return "basic";
    case Phase::Complex:
      return "complex";
    case Phase::Aggregation:
      return "aggregation";
  }
  return "?";
}

std::string_view diff_kind_name(DiffKind k) {
  switch (k) {
    case DiffKind::Basic:
      return "basic";
    case DiffKind::Working:
      return "working";
    case DiffKind::Compact:
      return "compact";
  }
  return "?";
}

ConceptSet make_set(std::vector<ConceptId> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

ConceptSet set_union(const ConceptSet& a, const ConceptSet& b) {
  ConceptSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const ConceptSet& s, const ConceptId& c) {
  return std::binary_search(s.begin(), s.end(), c);
}

namespace op {
ChangeOp addC(ConceptId c) { return concepts_op(OpKind::AddC, {std::move(c)}); }
ChangeOp delC(ConceptId c) { return concepts_op(OpKind::DelC, {std::move(c)}); }
ChangeOp mapC(ConceptId from, ConceptId to) {
  return concepts_op(OpKind::MapC, {std::move(from), std::move(to)});
}
ChangeOp addR(Relationship r) {
  ChangeOp o;
  o.kind = OpKind::AddR;
  o.relationships = {std::move(r)};
  return o;
}
ChangeOp delR(Relationship r) {
  ChangeOp o = addR(std::move(r));
  o.kind = OpKind::DelR;
  return o;
}
ChangeOp mapR(Relationship from, Relationship to) {
  ChangeOp o;
  o.kind = OpKind::MapR;
  o.relationships = {std::move(from), std::move(to)};
  return o;
}
ChangeOp addA(Attribute a) {
  ChangeOp o;
  o.kind = OpKind::AddA;
  o.attributes = {std::move(a)};
  return o;
}
ChangeOp delA(Attribute a) {
  ChangeOp o = addA(std::move(a));
  o.kind = OpKind::DelA;
  return o;
}
ChangeOp mapA(Attribute from, Attribute to) {
  ChangeOp o;
  o.kind = OpKind::MapA;
  o.attributes = {std::move(from), std::move(to)};
  return o;
}
ChangeOp substitute(ConceptId from, ConceptId to) {
  return concepts_op(OpKind::Substitute, {std::move(from), std::move(to)});
}
ChangeOp move(ConceptId c, ConceptId from, ConceptId to) {
  return concepts_op(OpKind::Move, {std::move(c), std::move(from), std::move(to)});
}
ChangeOp toObsolete(ConceptId c) { return concepts_op(OpKind::ToObsolete, {std::move(c)}); }
ChangeOp revokeObsolete(ConceptId c) {
  return concepts_op(OpKind::RevokeObsolete, {std::move(c)});
}
ChangeOp addLeaf(ConceptId c, ConceptSet parents) {
  return set_op(OpKind::AddLeaf, std::move(c), std::move(parents));
}
ChangeOp delLeaf(ConceptId c, ConceptSet parents) {
  return set_op(OpKind::DelLeaf, std::move(c), std::move(parents));
}
ChangeOp merge(ConceptSet sources, ConceptId target) {
  return set_op(OpKind::Merge, std::move(target), std::move(sources));
}
ChangeOp split(ConceptId source, ConceptSet targets) {
  return set_op(OpKind::Split, std::move(source), std::move(targets));
}
ChangeOp addSubGraph(ConceptId root, ConceptSet members) {
  return set_op(OpKind::AddSubGraph, std::move(root), std::move(members));
}
ChangeOp delSubGraph(ConceptId root, ConceptSet members) {
  return set_op(OpKind::DelSubGraph, std::move(root), std::move(members));
}
}  // namespace op

void check_well_formed(const ChangeOp& o) {
  std::size_t nc = 0, nr = 0, na = 0;
  bool needs_set = false;
  switch (shape_of(o.kind)) {
    case Shape::Concept1: nc = 1; break;
    case Shape::Concept2: nc = 2; break;
    case Shape::Concept3: nc = 3; break;
    case Shape::Rel1: nr = 1; break;
    case Shape::Rel2: nr = 2; break;
    case Shape::Attr1: na = 1; break;
    case Shape::Attr2: na = 2; break;
    case Shape::ConceptAndSet:
      nc = 1;
      needs_set = true;
      break;
  }
  const std::string name(op_name(o.kind));
  if (o.concepts.size() != nc || o.relationships.size() != nr || o.attributes.size() != na)
    throw Error("arity mismatch for " + name);
  if (needs_set && o.set.empty()) throw Error("empty set argument for " + name);
  if (!needs_set && !o.set.empty()) throw Error("unexpected set argument for " + name);
  if (needs_set && !std::is_sorted(o.set.begin(), o.set.end()))
    throw Error("unsorted set argument for " + name);
}

std::string quote_id(std::string_view s) {
  bool needs = s.empty();
  for (char ch : s) {
    if (needs) break;
    switch (ch) {
      case '(': case ')': case '{': case '}': case ',': case '"':
      case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
        needs = true;
        break;
      default:
        break;
    }
  }
  if (!needs) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string canonical_form(const ChangeOp& o) {
  std::string out(op_name(o.kind));
  out += '(';
  switch (shape_of(o.kind)) {
    case Shape::Concept1:
    case Shape::Concept2:
    case Shape::Concept3:
      for (std::size_t i = 0; i < o.concepts.size(); ++i) {
        if (i) out += ',';
        out += quote_id(o.concepts[i].value);
      }
      break;
    case Shape::Rel1:
    case Shape::Rel2:
      for (std::size_t i = 0; i < o.relationships.size(); ++i) {
        if (i) out += ',';
        const auto& r = o.relationships[i];
        append_triple(out, r.source.value, r.type, r.target.value);
      }
      break;
    case Shape::Attr1:
    case Shape::Attr2:
      for (std::size_t i = 0; i < o.attributes.size(); ++i) {
        if (i) out += ',';
        const auto& a = o.attributes[i];
        append_triple(out, a.concept_id.value, a.name, a.value);
      }
      break;
    case Shape::ConceptAndSet:
      if (o.kind == OpKind::Merge) {
        append_set(out, o.set);
        out += ',';
        out += quote_id(o.subject().value);
      } else {
        out += quote_id(o.subject().value);
        out += ',';
        append_set(out, o.set);
      }
      break;
  }
  out += ')';
  return out;
}

ChangeOp invert(const ChangeOp& o) {
  ChangeOp r = o;
  switch (o.kind) {
    case OpKind::AddC: r.kind = OpKind::DelC; break;
    case OpKind::DelC: r.kind = OpKind::AddC; break;
    case OpKind::AddR: r.kind = OpKind::DelR; break;
    case OpKind::DelR: r.kind = OpKind::AddR; break;
    case OpKind::AddA: r.kind = OpKind::DelA; break;
    case OpKind::DelA: r.kind = OpKind::AddA; break;
    case OpKind::ToObsolete: r.kind = OpKind::RevokeObsolete; break;
    case OpKind::RevokeObsolete: r.kind = OpKind::ToObsolete; break;
    case OpKind::AddLeaf: r.kind = OpKind::DelLeaf; break;
    case OpKind::DelLeaf: r.kind = OpKind::AddLeaf; break;
    case OpKind::Merge: r.kind = OpKind::Split; break;
    case OpKind::Split: r.kind = OpKind::Merge; break;
    case OpKind::AddSubGraph: r.kind = OpKind::DelSubGraph; break;
    case OpKind::DelSubGraph: r.kind = OpKind::AddSubGraph; break;
    case OpKind::MapC:
    case OpKind::Substitute:
      std::swap(r.concepts[0], r.concepts[1]);
      break;
    case OpKind::Move:
      std::swap(r.concepts[1], r.concepts[2]);
      break;
    case OpKind::MapR:
      std::swap(r.relationships[0], r.relationships[1]);
      break;
    case OpKind::MapA:
      std::swap(r.attributes[0], r.attributes[1]);
      break;
  }
  return r;
}

OpId DiffMapping::add(ChangeOp op, Phase phase, std::string created_by, std::vector<OpId> consumed) {
  std::string canon = canonical_form(op);
  auto [id, added] = try_add(std::move(op), std::move(canon), phase, std::move(created_by), consumed);
  if (!added) add_lineage(id, consumed);
  return id;
}

std::pair<OpId, bool> DiffMapping::try_add(ChangeOp&& op, std::string canonical, Phase phase,
                                           std::string created_by, std::vector<OpId> consumed) {
  if (auto it = live_index_.find(canonical); it != live_index_.end()) return {it->second, false};
  const auto k = static_cast<std::size_t>(op.kind);
  OpId id = push_record(std::move(op), std::move(canonical), phase, std::move(created_by), std::move(consumed));
  live_index_.emplace(records_.back().canonical, id);
  by_kind_[k].push_back(id);
  by_kind_dirty_[k] = true;
  return {id, true};
}

DiffMapping::DiffMapping(const DiffMapping& other)
    : kind_(other.kind_),
      old_label_(other.old_label_),
      new_label_(other.new_label_),
      records_(other.records_),
      by_kind_(other.by_kind_),
      by_kind_dirty_(other.by_kind_dirty_) {
  rebuild_index();
}

DiffMapping& DiffMapping::operator=(const DiffMapping& other) {
  if (this != &other) {
    DiffMapping copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void DiffMapping::rebuild_index() {
  live_index_.clear();
  live_index_.reserve(records_.size());
  for (const auto& rec : records_)
    if (rec.live) live_index_.emplace(rec.canonical, rec.id);
}

OpId DiffMapping::add_eliminated(ChangeOp op, Phase phase, std::string created_by,
                                 std::string eliminated_by, std::vector<OpId> consumed) {
  std::string canon = canonical_form(op);
  OpId id = push_record(std::move(op), std::move(canon), phase, std::move(created_by),
                        std::move(consumed));
  records_.back().live = false;
  records_.back().eliminated_by = std::move(eliminated_by);
  return id;
}

OpId DiffMapping::push_record(ChangeOp op, std::string canonical, Phase phase,
                              std::string created_by, std::vector<OpId> consumed) {
  for (OpId c : consumed)
    if (!contains(c)) throw Error("lineage refers to unknown op id " + std::to_string(c));
  OpRecord rec;
  rec.id = records_.size() + 1;
  rec.op = std::move(op);
  rec.canonical = std::move(canonical);
  rec.phase = phase;
  rec.created_by = std::move(created_by);
  std::sort(consumed.begin(), consumed.end());
  consumed.erase(std::unique(consumed.begin(), consumed.end()), consumed.end());
  rec.consumed = std::move(consumed);
  records_.push_back(std::move(rec));
  return records_.back().id;
}

void DiffMapping::eliminate(OpId id, const std::string& rule) {
  auto& rec = records_.at(id - 1);
  if (!rec.live) return;
  rec.live = false;
  rec.eliminated_by = rule;
  live_index_.erase(rec.canonical);
  by_kind_dirty_[static_cast<std::size_t>(rec.op.kind)] = true;
}

void DiffMapping::add_lineage(OpId id, const std::vector<OpId>& consumed) {
  auto& rec = records_.at(id - 1);
  for (OpId c : consumed) {
    if (c == id) continue;
    if (!contains(c)) throw Error("lineage refers to unknown op id " + std::to_string(c));
    auto pos = std::lower_bound(rec.consumed.begin(), rec.consumed.end(), c);
    if (pos == rec.consumed.end() || *pos != c) rec.consumed.insert(pos, c);
  }
}

const OpRecord& DiffMapping::record(OpId id) const {
  if (!contains(id)) throw Error("unknown op id " + std::to_string(id));
  return records_[id - 1];
}

std::optional<OpId> DiffMapping::find_live(const std::string& canonical) const {
  auto it = live_index_.find(canonical);
  if (it == live_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<OpId> DiffMapping::live_ids() const {
  static const std::array<OpKind, kOpKindCount> by_name = [] {
    std::array<OpKind, kOpKindCount> kinds{};
    for (std::size_t k = 0; k < kOpKindCount; ++k) kinds[k] = static_cast<OpKind>(k);
    std::sort(kinds.begin(), kinds.end(), [](OpKind a, OpKind b) { return op_name(a) < op_name(b); });
    return kinds;
  }();
  std::vector<OpId> ids;
  ids.reserve(live_index_.size());
  for (OpKind k : by_name) {
    auto part = live_ids(k);
    ids.insert(ids.end(), part.begin(), part.end());
  }
  return ids;
}

std::vector<OpId> DiffMapping::live_ids(OpKind k) const {
  const auto i = static_cast<std::size_t>(k);
  if (by_kind_dirty_[i]) {
    auto& v = by_kind_[i];
    v.erase(std::remove_if(v.begin(), v.end(), [this](OpId id) { return !records_[id - 1].live; }), v.end());
    std::sort(v.begin(), v.end(),
              [this](OpId a, OpId b) { return records_[a - 1].canonical < records_[b - 1].canonical; });
    by_kind_dirty_[i] = false;
  }
  return by_kind_[i];
}

std::vector<ChangeOp> DiffMapping::live_ops() const {
  std::vector<ChangeOp> out;
  for (OpId id : live_ids()) out.push_back(records_[id - 1].op);
  return out;
}

std::set<std::string> DiffMapping::live_canonical() const {
  std::set<std::string> out;
  for (const auto& [canon, _] : live_index_) out.emplace(canon);
  return out;
}

DiffMapping invert_diff(const DiffMapping& d) {
  DiffMapping out(d.kind(), d.new_label(), d.old_label());
  // Records are re-added in id order so ids stay aligned; lineage is
  // attached afterwards because it may point forward.
  for (const auto& rec : d.records()) {
    OpId id = rec.live ? out.add(invert(rec.op), rec.phase, rec.created_by)
                       : out.add_eliminated(invert(rec.op), rec.phase, rec.created_by,
                                            rec.eliminated_by);
    if (id != rec.id) throw Error("inconsistent diff: duplicate live op " + rec.canonical);
  }
  for (const auto& rec : d.records()) out.add_lineage(rec.id, rec.consumed);
  return out;
}

std::vector<ChangeOp> lineage_leaves(const DiffMapping& d, OpId id) {
  std::vector<ChangeOp> out;
  std::set<std::string> seen_canon;
  std::set<OpId> visited;
  std::vector<OpId> stack{id};
  d.record(id);
  while (!stack.empty()) {
    OpId cur = stack.back();
    stack.pop_back();
    if (!visited.insert(cur).second) continue;
    const auto& rec = d.record(cur);
    if (is_basic(rec.op.kind) || rec.consumed.empty()) {
      if (seen_canon.insert(rec.canonical).second) out.push_back(rec.op);
      continue;
    }
    for (auto it = rec.consumed.rbegin(); it != rec.consumed.rend(); ++it) stack.push_back(*it);
  }
  std::sort(out.begin(), out.end(),
            [](const ChangeOp& a, const ChangeOp& b) { return canonical_form(a) < canonical_form(b); });
  return out;
}

DiffMapping expand_to_basic(const DiffMapping& d) {
  DiffMapping out(DiffKind::Basic, d.old_label(), d.new_label());
  for (OpId id : d.live_ids()) {
    for (auto& leaf : lineage_leaves(d, id)) {
      if (!is_basic(leaf.kind))
        throw Error("missing lineage for complex op " + canonical_form(leaf));
      out.add(std::move(leaf));
    }
  }
  return out;
}

namespace {

using Signature = std::tuple<std::string, bool, std::string, std::string, std::vector<std::string>>;

std::vector<Signature> signatures(const DiffMapping& d) {
  std::vector<Signature> out;
  for (const auto& rec : d.records()) {
    std::vector<std::string> consumed;
    for (OpId c : rec.consumed) consumed.push_back(d.record(c).canonical);
    std::sort(consumed.begin(), consumed.end());
    out.emplace_back(rec.canonical, rec.live, rec.created_by, rec.eliminated_by, std::move(consumed));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool equivalent(const DiffMapping& a, const DiffMapping& b) {
  return a.kind() == b.kind() && a.live_canonical() == b.live_canonical() &&
         signatures(a) == signatures(b);
}

}  // namespace evomap
