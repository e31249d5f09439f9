#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evomap/matching.hpp"
#include "evomap/ontology.hpp"

namespace evomap {

enum class EditKind {
  InsertLeaf,
  DeleteLeaf,
  InsertSubtree,
  DeleteSubtree,
  Retype,
  Reparent,
  SetObsolete,
  UnsetObsolete,
  Rename,
  Merge,
  Split,
  Substitute,
};

inline constexpr std::size_t kEditKindCount = 12;

std::string_view edit_kind_name(EditKind k);

/// One primitive edit with everything needed to replay it.
///
/// Argument layout per kind:
///   InsertLeaf     {x, parent, type}
///   DeleteLeaf     {x}
///   InsertSubtree  {type, root, parent, child1, parent1, child2, parent2, ...}
///   DeleteSubtree  {root}
///   Retype         {source, target, new_type}
///   Reparent       {c, from, to}
///   SetObsolete / UnsetObsolete {c}
///   Rename         {c, new_name}
///   Merge          {target, source1, source2, ...}
///   Split          {source, new1, new2, ...}
///   Substitute     {old_id, new_id}
struct EditStep {
  EditKind kind = EditKind::InsertLeaf;
  std::vector<std::string> args;
};

struct EditScript {
  std::uint64_t seed = 0;
  std::vector<EditStep> steps;
};

std::string serialize_script(const EditScript& s);
EditScript parse_script(std::string_view doc);

struct SynthOptions {
  /// Keep edits apart so that each one is recoverable on its own.
  bool clean = true;
  /// Edit kinds to draw from; empty means all.
  std::vector<EditKind> kinds;
  /// Number of sources (merge, counting the target) or parts (split, counting
  /// the source) for merge and split edits; 0 picks 2..4 at random.
  std::size_t arity = 0;
};

struct SynthResult {
  Ontology o1;
  Ontology o2;
  MatchMapping match;
  EditScript script;
};

/// Random DAG with `size` concepts rooted at "c0", followed by `edit_count`
/// random applicable edits. Deterministic in `seed`. Throws Error when the
/// requested edits cannot be placed.
SynthResult synthesize(std::uint64_t seed, std::size_t size, std::size_t edit_count,
                       const SynthOptions& options = {});

/// Replays `s` on `o`; the correspondence induced by the script is written to
/// `match` when given. Throws Error on an inapplicable step.
Ontology apply_script(const Ontology& o, const EditScript& s, MatchMapping* match = nullptr);

}  // namespace evomap
