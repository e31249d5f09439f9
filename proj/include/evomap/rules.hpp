#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evomap/change.hpp"
#include "evomap/matching.hpp"
#include "evomap/ontology.hpp"

namespace evomap {

/// Read-only view of the live operations at the start of a rule invocation,
/// grouped by kind and ordered by canonical form.
class LiveView {
 public:
  explicit LiveView(const DiffMapping& d);

  const DiffMapping& diff() const noexcept { return *d_; }
  const std::vector<OpId>& of(OpKind k) const;
  const ChangeOp& op(OpId id) const { return d_->record(id).op; }
  std::optional<OpId> find(const ChangeOp& op) const;

 private:
  const DiffMapping* d_;
  mutable std::vector<std::optional<std::vector<OpId>>> by_kind_;
};

/// Everything a rule may look at besides the live set.
struct RuleContext {
  const Ontology* o_old = nullptr;
  const Ontology* o_new = nullptr;
  const MatchMapping* match = nullptr;
  /// The frozen basic diff; null while the basic phase runs.
  const DiffMapping* basic_snapshot = nullptr;
  /// Attribute name that the obsolete-status rules look at.
  std::string obsolete_attribute = "obsolete";
};

struct Creation {
  ChangeOp op;
  /// Ops of the invocation's snapshot that the created op replaces.
  std::vector<OpId> from;
};

/// Outcome of one satisfied precondition set.
struct Binding {
  std::vector<Creation> created;
  std::vector<OpId> eliminated;
};

enum class AggMode { Literal, Fused };
std::string_view agg_mode_name(AggMode m);

struct Rule {
  std::string id;
  Phase phase = Phase::Basic;
  int order = 0;
  /// Aggregation rules may re-fire on their own output across iterations.
  bool recursive = false;
  std::string description;
  std::function<std::vector<Binding>(const RuleContext&, const LiveView&)> bind;
  /// Optional one-step variant used in fused aggregation mode.
  std::function<std::vector<Binding>(const RuleContext&, const LiveView&)> bind_fused;
};

class RuleCatalog {
 public:
  /// Throws RuleError on duplicate id, order collision within a phase, or a
  /// recursive rule outside the aggregation phase.
  void register_rule(Rule r);

  /// Rules of one phase in execution order.
  std::vector<const Rule*> phase(Phase p) const;
  std::vector<const Rule*> all() const;
  const Rule* find(const std::string& id) const;
  std::size_t size() const noexcept { return rules_.size(); }

 private:
  std::vector<Rule> rules_;
};

struct CatalogOptions {
  /// c7 reads its negative preconditions as "no other concept maps into the
  /// source" instead of "the source maps nowhere else". Diverges from the
  /// published running-example result; kept for comparison.
  bool tabular_merge_reading = false;
};

/// Catalog with the 31 built-in rules b1..b11, c1..c10 and a1..a10.
RuleCatalog builtin_catalog(const CatalogOptions& options = {});

struct RuleStats {
  std::size_t bindings = 0;
  std::size_t created = 0;
  std::size_t eliminated = 0;
};

/// Evaluates all bindings of `r` against a snapshot of `d`, applies every
/// creation (deduplicated against live ops), then every elimination.
RuleStats apply_rule(const RuleContext& ctx, DiffMapping& d, const Rule& r,
                     AggMode mode = AggMode::Literal);

struct AggResult {
  std::size_t iterations = 0;
};

/// Runs the aggregation rules in order until a full pass leaves the live set
/// unchanged. `iterations` counts passes including the final quiet one.
AggResult apply_agg_rules(const RuleContext& ctx, DiffMapping& d,
                          const std::vector<const Rule*>& rules, AggMode mode);

}  // namespace evomap
