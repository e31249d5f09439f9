#include "evomap/rules.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "evomap/error.hpp"

namespace evomap {

LiveView::LiveView(const DiffMapping& d) : d_(&d), by_kind_(kOpKindCount) {}

const std::vector<OpId>& LiveView::of(OpKind k) const {
  auto& slot = by_kind_[static_cast<std::size_t>(k)];
  if (!slot) slot = d_->live_ids(k);
  return *slot;
}

std::optional<OpId> LiveView::find(const ChangeOp& op) const { return d_->find_live(canonical_form(op)); }

std::string_view agg_mode_name(AggMode m) { return m == AggMode::Literal ? "literal" : "fused"; }

// ---------------------------------------------------------------------------
// Catalog

void RuleCatalog::register_rule(Rule r) {
  if (r.id.empty()) throw RuleError("rule id must not be empty");
  if (!r.bind) throw RuleError("rule " + r.id + " has no binding procedure");
  if (r.recursive && r.phase != Phase::Aggregation)
    throw RuleError("rule " + r.id + ": only aggregation rules may be recursive");
  for (const auto& existing : rules_) {
    if (existing.id == r.id) throw RuleError("duplicate rule id " + r.id);
    if (existing.phase == r.phase && existing.order == r.order)
      throw RuleError("rule " + r.id + ": order " + std::to_string(r.order) + " already taken by " +
                      existing.id);
  }
  rules_.push_back(std::move(r));
}

std::vector<const Rule*> RuleCatalog::phase(Phase p) const {
  std::vector<const Rule*> out;
  for (const auto& r : rules_)
    if (r.phase == p) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const Rule* a, const Rule* b) { return a->order < b->order; });
  return out;
}

std::vector<const Rule*> RuleCatalog::all() const {
  std::vector<const Rule*> out;
  for (Phase p : {Phase::Basic, Phase::Complex, Phase::Aggregation}) {
    auto part = phase(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

const Rule* RuleCatalog::find(const std::string& id) const {
  for (const auto& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Application

RuleStats apply_rule(const RuleContext& ctx, DiffMapping& d, const Rule& r, AggMode mode) {
  RuleStats stats;
  std::vector<Binding> bindings;
  {
    LiveView view(d);
    const auto& fn = (mode == AggMode::Fused && r.bind_fused) ? r.bind_fused : r.bind;
    bindings = fn(ctx, view);
  }
  stats.bindings = bindings.size();

  std::set<OpId> doomed;
  for (const auto& b : bindings)
    for (OpId e : b.eliminated)
      if (d.record(e).live) doomed.insert(e);

  for (auto& b : bindings) {
    for (auto& c : b.created) {
      std::string canon = canonical_form(c.op);
      auto [id, added] = d.try_add(std::move(c.op), canon, r.phase, r.id, c.from);
      if (added) {
        ++stats.created;
      } else if (doomed.erase(id)) {
        d.eliminate(id, r.id);
        ++stats.eliminated;
        d.try_add(std::move(c.op), std::move(canon), r.phase, r.id, std::move(c.from));
        ++stats.created;
      } else {
        d.add_lineage(id, c.from);
      }
    }
  }
  for (OpId e : doomed) {
    d.eliminate(e, r.id);
    ++stats.eliminated;
  }
  return stats;
}

AggResult apply_agg_rules(const RuleContext& ctx, DiffMapping& d, const std::vector<const Rule*>& rules,
                          AggMode mode) {
  AggResult result;
  auto same_live_set = [&d](const std::vector<OpId>& before, const std::vector<OpId>& after) {
    if (before == after) return true;
    if (before.size() != after.size()) return false;
    for (std::size_t i = 0; i < before.size(); ++i)
      if (d.record(before[i]).canonical != d.record(after[i]).canonical) return false;
    return true;
  };
  while (true) {
    auto before = d.live_ids();
    for (const Rule* r : rules) apply_rule(ctx, d, *r, mode);
    ++result.iterations;
    if (same_live_set(before, d.live_ids())) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Built-in rules

namespace {

std::string key2(const ConceptId& a, const std::string& b) { return a.value + '\t' + b; }
std::string key2(const ConceptId& a, const ConceptId& b) { return a.value + '\t' + b.value; }

/// Every op of kind `k` in the frozen basic diff together with the live set.
template <typename Fn>
void for_each_basic_or_live(const RuleContext& ctx, const LiveView& view, OpKind k, Fn&& fn) {
  for (OpId id : view.of(k)) fn(view.op(id));
  if (!ctx.basic_snapshot) return;
  for (OpId id : ctx.basic_snapshot->live_ids(k)) fn(ctx.basic_snapshot->record(id).op);
}

Binding make_binding(ChangeOp op, std::vector<OpId> consumed) {
  Binding b;
  b.eliminated = consumed;
  b.created.push_back({std::move(op), std::move(consumed)});
  return b;
}

// Basic rules ----------------------------------------------------------------

std::vector<Binding> unmatched_concepts(const Ontology& o, const MatchMapping& m, bool new_side,
                                        ChangeOp (*make)(ConceptId)) {
  const auto& pairs = m.pairs();
  const auto& by_new = m.by_new();
  auto id = [&](std::size_t i) -> const ConceptId& { return new_side ? by_new[i]->second : pairs[i].first; };
  std::vector<Binding> out;
  std::size_t i = 0;
  for (const auto& c : o.concepts()) {
    while (i < pairs.size() && id(i) < c) ++i;
    if (i == pairs.size() || id(i) != c) out.push_back(make_binding(make(c), {}));
  }
  return out;
}

std::vector<Binding> b1_add_concept(const RuleContext& ctx, const LiveView&) {
  return unmatched_concepts(*ctx.o_new, *ctx.match, true, op::addC);
}

std::vector<Binding> b2_del_concept(const RuleContext& ctx, const LiveView&) {
  return unmatched_concepts(*ctx.o_old, *ctx.match, false, op::delC);
}

std::vector<Binding> b3_map_concept(const RuleContext& ctx, const LiveView&) {
  std::vector<Binding> out;
  for (const auto& [a, b] : ctx.match->pairs())
    if (a != b) out.push_back(make_binding(op::mapC(a, b), {}));
  return out;
}

// mapC(a,a) for self-matched concepts that also take part in another
// correspondence on the given side.
std::vector<Binding> identity_maps(const MatchMapping& m, bool old_side) {
  std::unordered_set<std::string_view> involved;
  for (const auto& [a, b] : m.pairs())
    if (a != b) involved.insert(old_side ? a.value : b.value);
  std::vector<Binding> out;
  if (involved.empty()) return out;
  for (const auto& [a, b] : m.pairs())
    if (a == b && involved.count(a.value)) out.push_back(make_binding(op::mapC(a, a), {}));
  return out;
}

std::vector<Binding> b4_identity_map_out(const RuleContext& ctx, const LiveView&) {
  return identity_maps(*ctx.match, true);
}

std::vector<Binding> b5_identity_map_in(const RuleContext& ctx, const LiveView&) {
  return identity_maps(*ctx.match, false);
}

template <typename T, typename Make>
std::vector<Binding> exclusive_elements(const std::vector<T>& in, const std::vector<T>& not_in, Make make) {
  std::vector<T> diff;
  std::set_difference(in.begin(), in.end(), not_in.begin(), not_in.end(), std::back_inserter(diff));
  std::vector<Binding> out;
  out.reserve(diff.size());
  for (auto& e : diff) out.push_back(make_binding(make(std::move(e)), {}));
  return out;
}

std::vector<Binding> b6_add_relationship(const RuleContext& ctx, const LiveView&) {
  return exclusive_elements(ctx.o_new->relationships(), ctx.o_old->relationships(),
                            [](Relationship r) { return op::addR(std::move(r)); });
}

std::vector<Binding> b7_del_relationship(const RuleContext& ctx, const LiveView&) {
  return exclusive_elements(ctx.o_old->relationships(), ctx.o_new->relationships(),
                            [](Relationship r) { return op::delR(std::move(r)); });
}

// Pairs exactly one deletion with exactly one addition per key.
template <typename KeyFn, typename MakeFn>
std::vector<Binding> pair_del_add(const LiveView& view, OpKind del, OpKind add, KeyFn key, MakeFn make) {
  std::map<std::string, std::pair<std::vector<OpId>, std::vector<OpId>>> groups;
  for (OpId id : view.of(del)) groups[key(view.op(id))].first.push_back(id);
  for (OpId id : view.of(add)) groups[key(view.op(id))].second.push_back(id);
  std::vector<Binding> out;
  for (const auto& [_, g] : groups) {
    if (g.first.size() != 1 || g.second.size() != 1) continue;
    out.push_back(make_binding(make(view.op(g.first[0]), view.op(g.second[0])), {g.first[0], g.second[0]}));
  }
  return out;
}

std::vector<Binding> b8_map_relationship(const RuleContext&, const LiveView& view) {
  return pair_del_add(
      view, OpKind::DelR, OpKind::AddR,
      [](const ChangeOp& o) { return key2(o.relationship().source, o.relationship().target); },
      [](const ChangeOp& d, const ChangeOp& a) { return op::mapR(d.relationship(), a.relationship()); });
}

std::vector<Binding> b9_add_attribute(const RuleContext& ctx, const LiveView&) {
  return exclusive_elements(ctx.o_new->attributes(), ctx.o_old->attributes(),
                            [](Attribute a) { return op::addA(std::move(a)); });
}

std::vector<Binding> b10_del_attribute(const RuleContext& ctx, const LiveView&) {
  return exclusive_elements(ctx.o_old->attributes(), ctx.o_new->attributes(),
                            [](Attribute a) { return op::delA(std::move(a)); });
}

std::vector<Binding> b11_map_attribute(const RuleContext&, const LiveView& view) {
  return pair_del_add(
      view, OpKind::DelA, OpKind::AddA,
      [](const ChangeOp& o) { return key2(o.attribute().concept_id, o.attribute().name); },
      [](const ChangeOp& d, const ChangeOp& a) { return op::mapA(d.attribute(), a.attribute()); });
}

// Complex rules --------------------------------------------------------------

struct MapIndex {
  std::unordered_map<std::string, std::set<ConceptId>> targets_of;
  std::unordered_map<std::string, std::set<ConceptId>> sources_of;
};

MapIndex map_index(const RuleContext& ctx, const LiveView& view) {
  MapIndex idx;
  for_each_basic_or_live(ctx, view, OpKind::MapC, [&](const ChangeOp& o) {
    idx.targets_of[o.concepts[0].value].insert(o.concepts[1]);
    idx.sources_of[o.concepts[1].value].insert(o.concepts[0]);
  });
  return idx;
}

bool only(const std::unordered_map<std::string, std::set<ConceptId>>& m, const ConceptId& key,
          const ConceptId& value) {
  auto it = m.find(key.value);
  return it == m.end() || (it->second.size() == 1 && *it->second.begin() == value);
}

std::vector<Binding> c1_substitute(const RuleContext& ctx, const LiveView& view) {
  auto idx = map_index(ctx, view);
  std::vector<Binding> out;
  for (OpId id : view.of(OpKind::MapC)) {
    const auto& o = view.op(id);
    const auto &a = o.concepts[0], &b = o.concepts[1];
    if (a == b) continue;
    if (!only(idx.targets_of, a, b) || !only(idx.sources_of, b, a)) continue;
    out.push_back(make_binding(op::substitute(a, b), {id}));
  }
  return out;
}

std::vector<Binding> c2_move(const RuleContext&, const LiveView& view) {
  std::unordered_map<std::string, std::vector<OpId>> added;
  for (OpId id : view.of(OpKind::AddR)) {
    const auto& r = view.op(id).relationship();
    added[key2(r.source, r.type)].push_back(id);
  }
  std::vector<Binding> out;
  for (OpId del : view.of(OpKind::DelR)) {
    const auto& r = view.op(del).relationship();
    auto it = added.find(key2(r.source, r.type));
    if (it == added.end()) continue;
    for (OpId add : it->second) {
      const auto& s = view.op(add).relationship();
      if (s.target == r.target) continue;
      out.push_back(make_binding(op::move(r.source, r.target, s.target), {del, add}));
    }
  }
  return out;
}

std::vector<Binding> obsolete_transition(const RuleContext& ctx, const LiveView& view, const char* from,
                                         const char* to, bool revoke) {
  std::vector<Binding> out;
  for (OpId id : view.of(OpKind::MapA)) {
    const auto& o = view.op(id);
    const auto &p = o.attributes[0], &q = o.attributes[1];
    if (p.concept_id != q.concept_id || p.name != ctx.obsolete_attribute || q.name != p.name) continue;
    if (p.value != from || q.value != to) continue;
    out.push_back(make_binding(revoke ? op::revokeObsolete(p.concept_id) : op::toObsolete(p.concept_id), {id}));
  }
  return out;
}

std::vector<Binding> c3_to_obsolete(const RuleContext& ctx, const LiveView& view) {
  return obsolete_transition(ctx, view, "false", "true", false);
}

std::vector<Binding> c4_revoke_obsolete(const RuleContext& ctx, const LiveView& view) {
  return obsolete_transition(ctx, view, "true", "false", true);
}

// c5/c6: a concept added (deleted) without any relationship pointing at it
// becomes a leaf addition (deletion), one binding per outgoing relationship.
std::vector<Binding> leaf_rule(const RuleContext& ctx, const LiveView& view, OpKind concept_kind,
                               OpKind rel_kind, bool deletion) {
  std::unordered_set<std::string> has_incoming;
  for_each_basic_or_live(ctx, view, rel_kind,
                         [&](const ChangeOp& o) { has_incoming.insert(o.relationship().target.value); });
  std::unordered_map<std::string, std::vector<OpId>> outgoing;
  for (OpId id : view.of(rel_kind)) outgoing[view.op(id).relationship().source.value].push_back(id);

  std::vector<Binding> out;
  for (OpId cid : view.of(concept_kind)) {
    const ConceptId& a = view.op(cid).subject();
    if (has_incoming.count(a.value)) continue;
    auto it = outgoing.find(a.value);
    if (it == outgoing.end()) continue;
    for (OpId rid : it->second) {
      ConceptSet parents{view.op(rid).relationship().target};
      out.push_back(make_binding(deletion ? op::delLeaf(a, std::move(parents)) : op::addLeaf(a, std::move(parents)),
                                 {cid, rid}));
    }
  }
  return out;
}

std::vector<Binding> c5_add_leaf(const RuleContext& ctx, const LiveView& view) {
  return leaf_rule(ctx, view, OpKind::AddC, OpKind::AddR, false);
}

std::vector<Binding> c6_del_leaf(const RuleContext& ctx, const LiveView& view) {
  return leaf_rule(ctx, view, OpKind::DelC, OpKind::DelR, true);
}

// Sources qualify when they map nowhere else. The tabular reading instead
// requires that nothing other than the target maps into the source.
std::vector<Binding> merge_rule(const RuleContext& ctx, const LiveView& view, bool tabular_reading) {
  auto idx = map_index(ctx, view);
  std::map<ConceptId, std::vector<OpId>> by_target;
  for (OpId id : view.of(OpKind::MapC)) {
    const auto& o = view.op(id);
    bool ok = tabular_reading ? only(idx.sources_of, o.concepts[0], o.concepts[1])
                              : only(idx.targets_of, o.concepts[0], o.concepts[1]);
    if (ok) by_target[o.concepts[1]].push_back(id);
  }
  std::vector<Binding> out;
  for (const auto& [c, ids] : by_target) {
    if (ids.size() < 2) continue;
    for (OpId id : ids) out.push_back(make_binding(op::merge({view.op(id).concepts[0]}, c), {id}));
  }
  return out;
}

std::vector<Binding> c8_split(const RuleContext& ctx, const LiveView& view) {
  auto idx = map_index(ctx, view);
  std::map<ConceptId, std::vector<OpId>> by_source;
  for (OpId id : view.of(OpKind::MapC)) {
    const auto& o = view.op(id);
    if (only(idx.sources_of, o.concepts[1], o.concepts[0])) by_source[o.concepts[0]].push_back(id);
  }
  std::vector<Binding> out;
  for (const auto& [c, ids] : by_source) {
    if (ids.size() < 2) continue;
    for (OpId id : ids) out.push_back(make_binding(op::split(c, {view.op(id).concepts[1]}), {id}));
  }
  return out;
}

std::vector<Binding> subgraph_seed(const LiveView& view, OpKind concept_kind, OpKind leaf_kind, bool deletion) {
  std::unordered_map<std::string, OpId> concept_op;
  for (OpId id : view.of(concept_kind)) concept_op.emplace(view.op(id).subject().value, id);
  std::vector<Binding> out;
  for (OpId lid : view.of(leaf_kind)) {
    const auto& leaf = view.op(lid);
    for (const auto& a : leaf.set) {
      auto it = concept_op.find(a.value);
      if (it == concept_op.end()) continue;
      ConceptSet members{leaf.subject()};
      out.push_back(make_binding(deletion ? op::delSubGraph(a, std::move(members))
                                          : op::addSubGraph(a, std::move(members)),
                                 {it->second, lid}));
    }
  }
  return out;
}

std::vector<Binding> c9_add_subgraph(const RuleContext&, const LiveView& view) {
  return subgraph_seed(view, OpKind::AddC, OpKind::AddLeaf, false);
}

std::vector<Binding> c10_del_subgraph(const RuleContext&, const LiveView& view) {
  return subgraph_seed(view, OpKind::DelC, OpKind::DelLeaf, true);
}

// Aggregation rules -------------------------------------------------------

// Fusion rules combine ops that share a key (the concept for leaf ops, the
// pivot for merge/split, the root for subgraph ops). Literal mode fuses
// neighbours in canonical order, halving each group per pass; fused mode
// collapses every group in one step.
ChangeOp fuse(OpKind kind, const ConceptId& pivot, ConceptSet set) {
  switch (kind) {
    case OpKind::AddLeaf: return op::addLeaf(pivot, std::move(set));
    case OpKind::DelLeaf: return op::delLeaf(pivot, std::move(set));
    case OpKind::Merge: return op::merge(std::move(set), pivot);
    case OpKind::Split: return op::split(pivot, std::move(set));
    case OpKind::AddSubGraph: return op::addSubGraph(pivot, std::move(set));
    case OpKind::DelSubGraph: return op::delSubGraph(pivot, std::move(set));
    default: throw RuleError("kind is not fusable");
  }
}

std::map<ConceptId, std::vector<OpId>> group_by_pivot(const LiveView& view, OpKind kind) {
  std::map<ConceptId, std::vector<OpId>> groups;
  for (OpId id : view.of(kind)) groups[view.op(id).concepts[0]].push_back(id);
  return groups;
}

std::vector<Binding> fuse_pairs(const LiveView& view, OpKind kind) {
  std::vector<Binding> out;
  for (const auto& [pivot, ids] : group_by_pivot(view, kind)) {
    for (std::size_t i = 0; i + 1 < ids.size(); i += 2) {
      ConceptSet u = set_union(view.op(ids[i]).set, view.op(ids[i + 1]).set);
      out.push_back(make_binding(fuse(kind, pivot, std::move(u)), {ids[i], ids[i + 1]}));
    }
  }
  return out;
}

std::vector<Binding> fuse_groups(const LiveView& view, OpKind kind) {
  std::vector<Binding> out;
  for (const auto& [pivot, ids] : group_by_pivot(view, kind)) {
    if (ids.size() < 2) continue;
    ConceptSet u;
    for (OpId id : ids) u = set_union(u, view.op(id).set);
    out.push_back(make_binding(fuse(kind, pivot, std::move(u)), ids));
  }
  return out;
}

Rule fusion_rule(std::string id, int order, OpKind kind, std::string description) {
  Rule r;
  r.id = std::move(id);
  r.phase = Phase::Aggregation;
  r.order = order;
  r.recursive = true;
  r.description = std::move(description);
  r.bind = [kind](const RuleContext&, const LiveView& v) { return fuse_pairs(v, kind); };
  r.bind_fused = [kind](const RuleContext&, const LiveView& v) { return fuse_groups(v, kind); };
  return r;
}

// a5/a8: a subgraph rooted at a grows to b when b itself is added (deleted)
// and the relationship a -> b is added (deleted).
std::vector<Binding> subgraph_grow(const LiveView& view, OpKind sg_kind, OpKind concept_kind, OpKind rel_kind,
                                   bool deletion) {
  std::unordered_map<std::string, OpId> concept_op;
  for (OpId id : view.of(concept_kind)) concept_op.emplace(view.op(id).subject().value, id);
  std::unordered_map<std::string, std::vector<OpId>> rel_by_source;
  for (OpId id : view.of(rel_kind)) rel_by_source[view.op(id).relationship().source.value].push_back(id);

  std::vector<Binding> out;
  for (OpId sid : view.of(sg_kind)) {
    const auto& sg = view.op(sid);
    auto it = rel_by_source.find(sg.subject().value);
    if (it == rel_by_source.end()) continue;
    for (OpId rid : it->second) {
      const ConceptId& b = view.op(rid).relationship().target;
      auto cit = concept_op.find(b.value);
      if (cit == concept_op.end()) continue;
      ConceptSet members = set_union(sg.set, {sg.subject()});
      out.push_back(make_binding(deletion ? op::delSubGraph(b, std::move(members))
                                          : op::addSubGraph(b, std::move(members)),
                                 {sid, cit->second, rid}));
    }
  }
  return out;
}

// a7/a10: subgraph a is spliced under subgraph b when an added (deleted)
// relationship leads from a to b's root or into b's members.
// A subgraph whose root is already a member of b is folded in as well.
std::vector<Binding> subgraph_splice(const LiveView& view, OpKind sg_kind, OpKind rel_kind, bool deletion) {
  std::unordered_map<std::string, std::vector<OpId>> by_root, by_member;
  for (OpId id : view.of(sg_kind)) {
    const auto& sg = view.op(id);
    by_root[sg.subject().value].push_back(id);
    for (const auto& m : sg.set) by_member[m.value].push_back(id);
  }
  std::vector<Binding> out;
  for (OpId rid : view.of(rel_kind)) {
    const auto& r = view.op(rid).relationship();
    auto ait = by_root.find(r.source.value);
    if (ait == by_root.end()) continue;
    std::vector<OpId> targets;
    if (auto it = by_root.find(r.target.value); it != by_root.end())
      targets.insert(targets.end(), it->second.begin(), it->second.end());
    if (auto it = by_member.find(r.target.value); it != by_member.end())
      targets.insert(targets.end(), it->second.begin(), it->second.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (OpId a_id : ait->second) {
      const auto& a = view.op(a_id);
      for (OpId b_id : targets) {
        if (b_id == a_id) continue;
        const auto& b = view.op(b_id);
        ConceptSet members = set_union(set_union(a.set, {a.subject()}), b.set);
        out.push_back(make_binding(deletion ? op::delSubGraph(b.subject(), std::move(members))
                                            : op::addSubGraph(b.subject(), std::move(members)),
                                   {a_id, b_id, rid}));
      }
    }
  }
  // A subgraph whose root already belongs to another one is absorbed into it.
  for (OpId a_id : view.of(sg_kind)) {
    const auto& a = view.op(a_id);
    auto it = by_member.find(a.subject().value);
    if (it == by_member.end()) continue;
    for (OpId b_id : it->second) {
      if (b_id == a_id) continue;
      const auto& b = view.op(b_id);
      ConceptSet members = set_union(set_union(a.set, {a.subject()}), b.set);
      out.push_back(make_binding(deletion ? op::delSubGraph(b.subject(), std::move(members))
                                          : op::addSubGraph(b.subject(), std::move(members)),
                                 {a_id, b_id}));
    }
  }
  return out;
}

Rule make_rule(std::string id, Phase phase, int order, std::string description,
               std::function<std::vector<Binding>(const RuleContext&, const LiveView&)> bind,
               bool recursive = false) {
  Rule r;
  r.id = std::move(id);
  r.phase = phase;
  r.order = order;
  r.recursive = recursive;
  r.description = std::move(description);
  r.bind = std::move(bind);
  return r;
}

}  // namespace

RuleCatalog builtin_catalog(const CatalogOptions& options) {
  RuleCatalog cat;
  const Phase B = Phase::Basic, C = Phase::Complex, A = Phase::Aggregation;

  cat.register_rule(make_rule("b1", B, 1, "addC for new concepts without a match", b1_add_concept));
  cat.register_rule(make_rule("b2", B, 2, "delC for old concepts without a match", b2_del_concept));
  cat.register_rule(make_rule("b3", B, 3, "mapC(a,b) for every match a != b", b3_map_concept));
  cat.register_rule(make_rule("b4", B, 4, "mapC(a,a) when a also matches another new concept",
                              b4_identity_map_out));
  cat.register_rule(make_rule("b5", B, 5, "mapC(a,a) when another old concept also matches a",
                              b5_identity_map_in));
  cat.register_rule(make_rule("b6", B, 6, "addR for relationships only in the new version", b6_add_relationship));
  cat.register_rule(make_rule("b7", B, 7, "delR for relationships only in the old version", b7_del_relationship));
  cat.register_rule(make_rule("b8", B, 8, "delR + addR with equal endpoints and other type -> mapR",
                              b8_map_relationship));
  cat.register_rule(make_rule("b9", B, 9, "addA for attributes only in the new version", b9_add_attribute));
  cat.register_rule(make_rule("b10", B, 10, "delA for attributes only in the old version", b10_del_attribute));
  cat.register_rule(make_rule("b11", B, 11, "delA + addA on the same concept and name -> mapA",
                              b11_map_attribute));

  cat.register_rule(make_rule("c1", C, 1, "lone mapC(a,b) -> substitute(a,b)", c1_substitute));
  cat.register_rule(make_rule("c2", C, 2, "delR + addR from the same source and type -> move", c2_move));
  cat.register_rule(make_rule("c3", C, 3, "mapA obsolete false -> true -> toObsolete", c3_to_obsolete));
  cat.register_rule(make_rule("c4", C, 4, "mapA obsolete true -> false -> revokeObsolete", c4_revoke_obsolete));
  cat.register_rule(make_rule("c5", C, 5, "added concept without added children -> addLeaf", c5_add_leaf));
  cat.register_rule(make_rule("c6", C, 6, "deleted concept without deleted children -> delLeaf", c6_del_leaf));
  cat.register_rule(make_rule("c7", C, 7, "several exclusive mapC into one target -> merge",
                              [tabular = options.tabular_merge_reading](const RuleContext& ctx, const LiveView& v) {
                                return merge_rule(ctx, v, tabular);
                              }));
  cat.register_rule(make_rule("c8", C, 8, "one source mapped to several exclusive targets -> split", c8_split));
  cat.register_rule(make_rule("c9", C, 9, "added parent of an added leaf -> addSubGraph", c9_add_subgraph));
  cat.register_rule(make_rule("c10", C, 10, "deleted parent of a deleted leaf -> delSubGraph", c10_del_subgraph));

  cat.register_rule(fusion_rule("a1", 1, OpKind::AddLeaf, "fuse addLeaf parent sets"));
  cat.register_rule(fusion_rule("a2", 2, OpKind::DelLeaf, "fuse delLeaf parent sets"));
  cat.register_rule(fusion_rule("a3", 3, OpKind::Merge, "fuse merge sources per target"));
  cat.register_rule(fusion_rule("a4", 4, OpKind::Split, "fuse split targets per source"));
  cat.register_rule(make_rule(
      "a5", A, 5, "grow addSubGraph through an added parent",
      [](const RuleContext&, const LiveView& v) {
        return subgraph_grow(v, OpKind::AddSubGraph, OpKind::AddC, OpKind::AddR, false);
      },
      true));
  cat.register_rule(fusion_rule("a6", 6, OpKind::AddSubGraph, "fuse addSubGraph members per root"));
  cat.register_rule(make_rule(
      "a7", A, 7, "splice addSubGraph under a connected addSubGraph",
      [](const RuleContext&, const LiveView& v) { return subgraph_splice(v, OpKind::AddSubGraph, OpKind::AddR, false); },
      true));
  cat.register_rule(make_rule(
      "a8", A, 8, "grow delSubGraph through a deleted parent",
      [](const RuleContext&, const LiveView& v) {
        return subgraph_grow(v, OpKind::DelSubGraph, OpKind::DelC, OpKind::DelR, true);
      },
      true));
  cat.register_rule(fusion_rule("a9", 9, OpKind::DelSubGraph, "fuse delSubGraph members per root"));
  cat.register_rule(make_rule(
      "a10", A, 10, "splice delSubGraph under a connected delSubGraph",
      [](const RuleContext&, const LiveView& v) { return subgraph_splice(v, OpKind::DelSubGraph, OpKind::DelR, true); },
      true));
  return cat;
}

}  // namespace evomap
