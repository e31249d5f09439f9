#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evomap/ontology.hpp"

namespace evomap {

enum class OpKind : std::uint8_t {
  AddC,
  DelC,
  MapC,
  AddR,
  DelR,
  MapR,
  AddA,
  DelA,
  MapA,
  Substitute,
  Move,
  ToObsolete,
  RevokeObsolete,
  AddLeaf,
  DelLeaf,
  Merge,
  Split,
  AddSubGraph,
  DelSubGraph,
};

inline constexpr std::size_t kOpKindCount = 19;

std::string_view op_name(OpKind k);
std::optional<OpKind> op_kind_from_name(std::string_view name);
bool is_basic(OpKind k);

/// Sorted, duplicate-free concept set as used by set-valued operations.
using ConceptSet = std::vector<ConceptId>;
ConceptSet make_set(std::vector<ConceptId> items);
ConceptSet set_union(const ConceptSet& a, const ConceptSet& b);
bool set_contains(const ConceptSet& s, const ConceptId& c);

/// A basic or complex change operation.
///
/// Arguments are stored by shape rather than by kind:
///   addC/delC/toObsolete/revokeObsolete  concepts = {c}
///   mapC/substitute                      concepts = {a, b}
///   move                                 concepts = {c, from, to}
///   addR/delR, mapR                      relationships = {r} / {r, s}
///   addA/delA, mapA                      attributes = {p} / {p, q}
///   addLeaf/delLeaf/split/addSubGraph/delSubGraph
///                                        concepts = {c}, set = C
///   merge                                concepts = {target}, set = sources
/// Use the factory functions in `op` to build well-formed values.
struct ChangeOp {
  OpKind kind = OpKind::AddC;
  std::vector<ConceptId> concepts;
  ConceptSet set;
  std::vector<Relationship> relationships;
  std::vector<Attribute> attributes;

  const ConceptId& subject() const { return concepts.at(0); }
  const Relationship& relationship() const { return relationships.at(0); }
  const Attribute& attribute() const { return attributes.at(0); }

  friend bool operator==(const ChangeOp&, const ChangeOp&) = default;
};

namespace op {
ChangeOp addC(ConceptId c);
ChangeOp delC(ConceptId c);
ChangeOp mapC(ConceptId from, ConceptId to);
ChangeOp addR(Relationship r);
ChangeOp delR(Relationship r);
ChangeOp mapR(Relationship from, Relationship to);
ChangeOp addA(Attribute a);
ChangeOp delA(Attribute a);
ChangeOp mapA(Attribute from, Attribute to);
ChangeOp substitute(ConceptId from, ConceptId to);
ChangeOp move(ConceptId c, ConceptId from, ConceptId to);
ChangeOp toObsolete(ConceptId c);
ChangeOp revokeObsolete(ConceptId c);
ChangeOp addLeaf(ConceptId c, ConceptSet parents);
ChangeOp delLeaf(ConceptId c, ConceptSet parents);
ChangeOp merge(ConceptSet sources, ConceptId target);
ChangeOp split(ConceptId source, ConceptSet targets);
ChangeOp addSubGraph(ConceptId root, ConceptSet members);
ChangeOp delSubGraph(ConceptId root, ConceptSet members);
}  // namespace op

/// Throws Error when the argument shape does not fit the kind.
void check_well_formed(const ChangeOp& op);

/// Byte form used for equality, ordering and the diff file format.
std::string canonical_form(const ChangeOp& op);

/// Emits `s` bare or double-quoted, following the diff file quoting rule.
std::string quote_id(std::string_view s);

ChangeOp invert(const ChangeOp& op);

using OpId = std::uint64_t;

enum class Phase : std::uint8_t { Basic, Complex, Aggregation };
std::string_view phase_name(Phase p);

enum class DiffKind : std::uint8_t { Basic, Working, Compact };
std::string_view diff_kind_name(DiffKind k);

struct OpRecord {
  OpId id = 0;
  ChangeOp op;
  std::string canonical;
  bool live = true;
  Phase phase = Phase::Basic;
  std::string created_by;     // rule id, empty when unknown
  std::string eliminated_by;  // rule id of the eliminating rule
  std::vector<OpId> consumed;  // lineage: ops this one replaced
};

/// Working set of change operations with lineage.
///
/// Ids are assigned in creation order starting at 1 and never reused.
/// Eliminated records are kept so that lineage can be followed back to the
/// basic operations a complex one stands for. Live records are pairwise
/// distinct by canonical form.
class DiffMapping {
 public:
  DiffMapping() = default;
  DiffMapping(const DiffMapping& other);
  DiffMapping(DiffMapping&&) noexcept = default;
  DiffMapping& operator=(const DiffMapping& other);
  DiffMapping& operator=(DiffMapping&&) noexcept = default;
  explicit DiffMapping(DiffKind kind, std::string old_label = {}, std::string new_label = {})
      : kind_(kind), old_label_(std::move(old_label)), new_label_(std::move(new_label)) {}

  DiffKind kind() const noexcept { return kind_; }
  void set_kind(DiffKind k) noexcept { kind_ = k; }
  const std::string& old_label() const noexcept { return old_label_; }
  const std::string& new_label() const noexcept { return new_label_; }
  void set_labels(std::string old_label, std::string new_label) {
    old_label_ = std::move(old_label);
    new_label_ = std::move(new_label);
  }

  /// Adds a live op. When an equal op is already live the existing id is
  /// returned and `consumed` is appended to its lineage.
  OpId add(ChangeOp op, Phase phase = Phase::Basic, std::string created_by = {},
           std::vector<OpId> consumed = {});

  /// Adds `op` with its precomputed canonical form unless an equal op is live.
  /// Returns the live id and whether a record was created; `op` is moved from
  /// only in the latter case and lineage is left alone otherwise.
  std::pair<OpId, bool> try_add(ChangeOp&& op, std::string canonical, Phase phase,
                                std::string created_by, std::vector<OpId> consumed);

  /// Appends a record that is already eliminated. Never deduplicates.
  OpId add_eliminated(ChangeOp op, Phase phase, std::string created_by,
                      std::string eliminated_by, std::vector<OpId> consumed = {});

  /// Marks a live op eliminated. No-op for already eliminated ops.
  void eliminate(OpId id, const std::string& rule = {});

  /// Appends lineage edges to an existing record.
  void add_lineage(OpId id, const std::vector<OpId>& consumed);

  bool contains(OpId id) const noexcept { return id >= 1 && id <= records_.size(); }
  const OpRecord& record(OpId id) const;
  const std::deque<OpRecord>& records() const noexcept { return records_; }

  std::optional<OpId> find_live(const std::string& canonical) const;
  bool has_live(const ChangeOp& op) const { return find_live(canonical_form(op)).has_value(); }

  /// Live ids ordered by canonical form.
  std::vector<OpId> live_ids() const;
  /// Live ops of one kind in canonical order.
  std::vector<OpId> live_ids(OpKind k) const;
  std::vector<ChangeOp> live_ops() const;
  std::set<std::string> live_canonical() const;
  std::size_t live_count() const noexcept { return live_index_.size(); }

 private:
  DiffKind kind_ = DiffKind::Basic;
  std::string old_label_;
  std::string new_label_;
  OpId push_record(ChangeOp op, std::string canonical, Phase phase, std::string created_by,
                   std::vector<OpId> consumed);

  void rebuild_index();

  // Records never move once appended, so the index can refer to their
  // canonical strings.
  std::deque<OpRecord> records_;
  std::unordered_map<std::string_view, OpId> live_index_;
  // Live ids per kind; entries go stale on elimination and are filtered and
  // re-sorted on the next read.
  mutable std::array<std::vector<OpId>, kOpKindCount> by_kind_;
  mutable std::array<bool, kOpKindCount> by_kind_dirty_{};
};

/// Replaces every op by its inverse, keeps lineage and rule provenance,
/// swaps the version labels.
DiffMapping invert_diff(const DiffMapping& d);

/// Basic ops a given op stands for, reached by following lineage until an op
/// of basic kind (or one without lineage) is hit.
std::vector<ChangeOp> lineage_leaves(const DiffMapping& d, OpId id);

/// Union of lineage leaves over all live ops, as a fresh basic mapping.
/// Throws Error when a live complex op has no lineage.
DiffMapping expand_to_basic(const DiffMapping& d);

/// Same live op set and isomorphic lineage between live and eliminated ops,
/// irrespective of op ids.
bool equivalent(const DiffMapping& a, const DiffMapping& b);

}  // namespace evomap
