#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evomap/ontology.hpp"

namespace evomap {

/// Correspondences between concepts of an old and a new version.
///
/// A concept may occur in several pairs; such multi-matches are what the
/// basic rules turn into identity maps and, later, merges and splits.
/// Pairs are normalized lazily on first read, so a mapping that is still
/// being filled must not be read from several threads at once.
class MatchMapping {
 public:
  using Pair = std::pair<ConceptId, ConceptId>;

  MatchMapping() = default;
  MatchMapping(const MatchMapping& o) : pairs_(o.pairs()) {}
  MatchMapping(MatchMapping&&) noexcept = default;
  MatchMapping& operator=(const MatchMapping& o) {
    if (this != &o) {
      pairs_ = o.pairs();
      sorted_ = true;
      by_new_.clear();
    }
    return *this;
  }
  MatchMapping& operator=(MatchMapping&&) noexcept = default;

  explicit MatchMapping(const std::set<Pair>& pairs) : pairs_(pairs.begin(), pairs.end()) {}

  void add(ConceptId old_id, ConceptId new_id) {
    Pair p(std::move(old_id), std::move(new_id));
    if (!pairs_.empty() && !(pairs_.back() < p)) sorted_ = false;
    pairs_.push_back(std::move(p));
    by_new_.clear();
  }

  /// Pairs in ascending order without duplicates.
  const std::vector<Pair>& pairs() const {
    normalize();
    return pairs_;
  }
  std::size_t size() const { return pairs().size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  bool contains(const ConceptId& a, const ConceptId& b) const {
    const auto& p = pairs();
    return std::binary_search(p.begin(), p.end(), Pair(a, b));
  }

  /// The same pairs ordered by (new, old).
  const std::vector<const Pair*>& by_new() const;

  /// Pairs with old and new swapped.
  MatchMapping inverse() const;

  friend bool operator==(const MatchMapping& a, const MatchMapping& b) { return a.pairs() == b.pairs(); }

 private:
  void normalize() const {
    if (sorted_) return;
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    sorted_ = true;
  }

  mutable std::vector<Pair> pairs_;
  mutable bool sorted_ = true;
  mutable std::vector<const Pair*> by_new_;
};

/// {(c,c) | c in both versions}.
MatchMapping match_by_id(const Ontology& o1, const Ontology& o2);

/// Lower-cases ASCII letters, trims and collapses runs of whitespace.
std::string normalize_label(std::string_view s);

/// Pairs concepts whose normalized label and whose multiset of root-path label
/// sequences agree. Concepts without `label_attr` use their id as label.
MatchMapping match_by_label_path(const Ontology& o1, const Ontology& o2,
                                 const std::string& label_attr = "name");

struct MatchReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
};

MatchReport validate_match(const MatchMapping& m, const Ontology& o1, const Ontology& o2);

}  // namespace evomap
