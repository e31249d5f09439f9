#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace evomap {

/// Identifier of a concept. Equality of concepts is identifier equality.
struct ConceptId {
  std::string value;

  ConceptId() = default;
  explicit ConceptId(std::string v) : value(std::move(v)) {}

  friend auto operator<=>(const ConceptId&, const ConceptId&) = default;
  friend bool operator==(const ConceptId&, const ConceptId&) = default;
};

/// Directed edge from a child (`source`) to a parent (`target`).
struct Relationship {
  ConceptId source;
  std::string type;
  ConceptId target;

  friend auto operator<=>(const Relationship&, const Relationship&) = default;
  friend bool operator==(const Relationship&, const Relationship&) = default;
};

struct Attribute {
  ConceptId concept_id;
  std::string name;
  std::string value;

  friend auto operator<=>(const Attribute&, const Attribute&) = default;
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

using Element = std::variant<ConceptId, Relationship, Attribute>;

struct Neighbors {
  std::set<ConceptId> parents;
  std::set<ConceptId> children;
};

/// One immutable ontology version: concepts, attributes and relationships.
///
/// The constructor does not validate; call validate() on untrusted input.
/// Adjacency is indexed once at construction, so neighbour lookups are cheap.
class Ontology {
 public:
  Ontology() = default;
  Ontology(std::string version_label, std::set<ConceptId> concepts,
           std::set<Relationship> relationships, std::set<Attribute> attributes);

  const std::string& version_label() const noexcept { return label_; }
  /// Element sets as sorted, duplicate-free sequences.
  const std::vector<ConceptId>& concepts() const noexcept { return concepts_; }
  const std::vector<Relationship>& relationships() const noexcept { return relationships_; }
  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }

  bool contains(const ConceptId& c) const {
    return std::binary_search(concepts_.begin(), concepts_.end(), c);
  }
  bool contains(const Relationship& r) const {
    return std::binary_search(relationships_.begin(), relationships_.end(), r);
  }
  bool contains(const Attribute& a) const {
    return std::binary_search(attributes_.begin(), attributes_.end(), a);
  }

  /// Throws Error for an unknown concept.
  Neighbors neighbors(const ConceptId& c) const;

  /// Parent/child ids in relationship order; empty for unknown ids.
  const std::vector<ConceptId>& parents_of(const ConceptId& c) const;
  const std::vector<ConceptId>& children_of(const ConceptId& c) const;

  /// Concepts that are no relationship's source.
  std::vector<ConceptId> roots() const;

  /// Disjoint union of concepts, relationships and attributes.
  std::set<Element> elements() const;
  std::size_t element_count() const noexcept {
    return concepts_.size() + relationships_.size() + attributes_.size();
  }

  /// Same element sets; the version label is ignored.
  bool same_elements(const Ontology& other) const {
    return concepts_ == other.concepts_ && relationships_ == other.relationships_ &&
           attributes_ == other.attributes_;
  }

 private:
  std::string label_;
  std::vector<ConceptId> concepts_;
  std::vector<Relationship> relationships_;
  std::vector<Attribute> attributes_;
  std::unordered_map<std::string, std::vector<ConceptId>> parents_;
  std::unordered_map<std::string, std::vector<ConceptId>> children_;
};

struct ValidationOptions {
  /// Treat several roots as a violation instead of a warning.
  bool single_root = false;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate(const Ontology& o, const ValidationOptions& options = {});

/// Children-before-parents order of all concepts; false when a cycle exists.
bool topological_order(const Ontology& o, std::vector<ConceptId>& order);

std::string to_string(const Element& e);

}  // namespace evomap

template <>
struct std::hash<evomap::ConceptId> {
  std::size_t operator()(const evomap::ConceptId& c) const noexcept {
    return std::hash<std::string>{}(c.value);
  }
};
