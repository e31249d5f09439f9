#pragma once

#include <string>
#include <vector>

#include "evomap/change.hpp"
#include "evomap/matching.hpp"
#include "evomap/ontology.hpp"
#include "evomap/rules.hpp"

namespace evomap {

struct MigrationOptions {
  /// Downgrade "already absent on delete" and "already present on add" to warnings.
  bool lenient = false;
  ValidationOptions validation;
  /// Label of the produced version; empty keeps the diff's new label.
  std::string version_label;
};

struct MigrationReport {
  std::vector<std::string> warnings;
  std::size_t applied = 0;
};

/// Executes the live basic ops of `d` on `o` stage by stage:
/// delA, delR, delC, mapC, mapA, mapR, addC, addA, addR.
/// Throws MigrationError naming the first op that does not fit `o`, or when
/// the result fails validation.
Ontology ont_version_mig(const Ontology& o, const DiffMapping& d, const MigrationOptions& options = {},
                         MigrationReport* report = nullptr);

struct RoundtripReport {
  std::size_t intersection = 0;  // |elements(o1) ∩ elements(o1'')|
  std::size_t union_size = 0;    // |elements(o1) ∪ elements(o1'')|
  bool forward_ok = false;       // o1' element-equals o2
  bool backward_ok = false;      // o1'' element-equals o1
  bool passed() const noexcept { return forward_ok && backward_ok; }
  std::string line() const;
};

RoundtripReport roundtrip(const Ontology& o1, const Ontology& o2, const MatchMapping& m,
                          const RuleCatalog& catalog);

/// Set overlap of two versions' element sets.
std::pair<std::size_t, std::size_t> element_overlap(const Ontology& a, const Ontology& b);

}  // namespace evomap
