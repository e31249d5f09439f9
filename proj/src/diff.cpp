#include "evomap/diff.hpp"

#include "evomap/error.hpp"

namespace evomap {

namespace {

void check_match(const Ontology& o1, const Ontology& o2, const MatchMapping& m) {
  auto report = validate_match(m, o1, o2);
  if (!report.ok()) throw MatchError("invalid match: " + report.violations.front());
}

void run_complex_and_aggregation(const RuleContext& ctx, DiffMapping& d, const RuleCatalog& catalog,
                                 AggMode mode, std::size_t* iterations) {
  for (const Rule* r : catalog.phase(Phase::Complex)) apply_rule(ctx, d, *r, mode);
  auto agg = apply_agg_rules(ctx, d, catalog.phase(Phase::Aggregation), mode);
  if (iterations) *iterations = agg.iterations;
}

}  // namespace

DiffMapping diff_basic_gen(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                           const RuleCatalog& catalog) {
  check_match(o1, o2, m);
  RuleContext ctx;
  ctx.o_old = &o1;
  ctx.o_new = &o2;
  ctx.match = &m;
  DiffMapping d(DiffKind::Basic, o1.version_label(), o2.version_label());
  for (const Rule* r : catalog.phase(Phase::Basic)) apply_rule(ctx, d, *r);
  return d;
}

DiffResult diff_evol_map_gen(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                             const RuleCatalog& catalog, const DiffOptions& options) {
  DiffResult result;
  result.basic = diff_basic_gen(o1, o2, m, catalog);
  result.compact = result.basic;
  result.compact.set_kind(DiffKind::Compact);

  RuleContext ctx;
  ctx.o_old = &o1;
  ctx.o_new = &o2;
  ctx.match = &m;
  ctx.basic_snapshot = &result.basic;
  run_complex_and_aggregation(ctx, result.compact, catalog, options.mode, &result.agg_iterations);
  return result;
}

bool is_rule_fixpoint(const Ontology& o1, const Ontology& o2, const MatchMapping& m, const DiffResult& result,
                      const RuleCatalog& catalog, AggMode mode) {
  RuleContext ctx;
  ctx.o_old = &o1;
  ctx.o_new = &o2;
  ctx.match = &m;
  ctx.basic_snapshot = &result.basic;
  DiffMapping again = result.compact;
  run_complex_and_aggregation(ctx, again, catalog, mode, nullptr);
  return again.live_canonical() == result.compact.live_canonical();
}

}  // namespace evomap
