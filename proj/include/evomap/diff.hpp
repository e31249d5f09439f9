#pragma once

#include "evomap/change.hpp"
#include "evomap/matching.hpp"
#include "evomap/ontology.hpp"
#include "evomap/rules.hpp"

namespace evomap {

/// Applies every basic rule once, in order. Throws MatchError when `m`
/// refers to concepts missing from either version.
DiffMapping diff_basic_gen(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                           const RuleCatalog& catalog);

struct DiffResult {
  DiffMapping basic;
  DiffMapping compact;
  std::size_t agg_iterations = 0;
};

struct DiffOptions {
  AggMode mode = AggMode::Fused;
};

/// Basic diff, one ordered pass of the complex rules over a copy of it, then
/// aggregation to a fixpoint.
DiffResult diff_evol_map_gen(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                             const RuleCatalog& catalog, const DiffOptions& options = {});

/// Re-runs the complex and aggregation phases on a finished compact diff.
/// Returns true when nothing changes.
bool is_rule_fixpoint(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                      const DiffResult& result, const RuleCatalog& catalog, AggMode mode);

}  // namespace evomap
