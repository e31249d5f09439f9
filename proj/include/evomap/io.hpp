#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evomap/change.hpp"
#include "evomap/matching.hpp"
#include "evomap/ontology.hpp"

namespace evomap {

// Native ontology format (UTF-8, LF):
//
//   # comments
//   [concepts]
//   <id>
//   [relationships]
//   <source>\t<type>\t<target>
//   [attributes]
//   <concept>\t<name>\t<value>
//
// A `# version: <label>` comment carries the version label.

struct OntologyParseOptions {
  /// Overrides the label found in the document when non-empty.
  std::string version_label;
  bool validate = true;
  ValidationOptions validation;
};

/// Throws ParseError for syntax problems, undeclared ids and duplicates, and
/// ValidationError when the parsed graph violates an ontology invariant.
Ontology parse_ontology(std::string_view doc, const OntologyParseOptions& options = {});

/// Canonical text: each section's lines sorted by code point.
std::string serialize_ontology(const Ontology& o);

/// Lines `<old_id>\t<new_id>`, `#` comments. Throws MatchError on unknown ids
/// or malformed lines.
MatchMapping parse_match(std::string_view doc, const Ontology& o1, const Ontology& o2);
std::string serialize_match(const MatchMapping& m);

// Diff files start with `#evomap-diff v1 kind=<basic|compact>`, optionally
// followed by `#versions\t<old>\t<new>`, then one op per line:
//
//   <canonical op>[\tby=<rule>][\tfrom=<n>,<n>...][\tdead[=<rule>]]
//
// `from` lists the 1-based positions of the op lines this op replaced,
// `dead` marks an eliminated op. Lines without annotations are live ops.

/// Parses one canonical op. Throws ParseError (line 0) on bad input.
ChangeOp parse_op(std::string_view text);

DiffMapping parse_diff(std::string_view doc);

/// Orders ops by (phase, canonical form). With `with_lineage` false only live
/// ops are written and lineage is dropped.
std::string serialize_diff(const DiffMapping& d, bool with_lineage = true);

struct OboOptions {
  std::string version_label;
  /// Drop relationships whose target is not declared instead of failing.
  bool drop_dangling = false;
  /// Emit (id, obsolete, false) for terms without `is_obsolete: true`.
  bool explicit_not_obsolete = false;
};

struct OboReport {
  std::size_t terms = 0;
  std::size_t ignored_stanzas = 0;
  std::size_t ignored_tags = 0;
  std::vector<std::string> warnings;
};

/// Reads [Term] stanzas: id, name, def, is_obsolete, is_a and relationship.
/// The result is not validated.
Ontology parse_obo_subset(std::string_view doc, const OboOptions& options = {},
                          OboReport* report = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace evomap
