#include "evomap/ontology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "evomap/error.hpp"

namespace evomap {

namespace {

const std::vector<ConceptId> kNoConcepts;

}  // namespace

Ontology::Ontology(std::string version_label, std::set<ConceptId> concepts,
                   std::set<Relationship> relationships, std::set<Attribute> attributes)
    : label_(std::move(version_label)),
      concepts_(std::make_move_iterator(concepts.begin()), std::make_move_iterator(concepts.end())),
      relationships_(std::make_move_iterator(relationships.begin()),
                     std::make_move_iterator(relationships.end())),
      attributes_(std::make_move_iterator(attributes.begin()), std::make_move_iterator(attributes.end())) {
  for (const auto& r : relationships_) {
    auto& ps = parents_[r.source.value];
    if (ps.empty() || ps.back() != r.target) ps.push_back(r.target);
    children_[r.target.value].push_back(r.source);
  }
  // Relationships are ordered by source, so parent lists only need
  // deduplication across types; child lists need sorting.
  for (auto& [_, ps] : parents_) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  }
  for (auto& [_, cs] : children_) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  }
}

Neighbors Ontology::neighbors(const ConceptId& c) const {
  if (!contains(c)) throw Error("unknown concept id: " + c.value);
  Neighbors n;
  const auto& ps = parents_of(c);
  const auto& cs = children_of(c);
  n.parents.insert(ps.begin(), ps.end());
  n.children.insert(cs.begin(), cs.end());
  return n;
}

const std::vector<ConceptId>& Ontology::parents_of(const ConceptId& c) const {
  auto it = parents_.find(c.value);
  return it == parents_.end() ? kNoConcepts : it->second;
}

const std::vector<ConceptId>& Ontology::children_of(const ConceptId& c) const {
  auto it = children_.find(c.value);
  return it == children_.end() ? kNoConcepts : it->second;
}

std::vector<ConceptId> Ontology::roots() const {
  std::vector<ConceptId> out;
  for (const auto& c : concepts_)
    if (parents_of(c).empty()) out.push_back(c);
  return out;
}

std::set<Element> Ontology::elements() const {
  std::set<Element> out;
  for (const auto& c : concepts_) out.emplace_hint(out.end(), c);
  for (const auto& r : relationships_) out.emplace_hint(out.end(), r);
  for (const auto& a : attributes_) out.emplace_hint(out.end(), a);
  return out;
}

bool topological_order(const Ontology& o, std::vector<ConceptId>& order) {
  order.clear();
  std::map<ConceptId, std::size_t> pending_children;
  for (const auto& c : o.concepts()) pending_children[c] = o.children_of(c).size();
  std::deque<ConceptId> ready;
  for (const auto& [c, n] : pending_children)
    if (n == 0) ready.push_back(c);
  while (!ready.empty()) {
    ConceptId c = std::move(ready.front());
    ready.pop_front();
    for (const auto& p : o.parents_of(c)) {
      auto it = pending_children.find(p);
      if (it != pending_children.end() && --it->second == 0) ready.push_back(p);
    }
    order.push_back(std::move(c));
  }
  return order.size() == o.concepts().size();
}

namespace {

bool bad_id(const std::string& s) {
  return s.empty() || s.find_first_of("\t\n\r") != std::string::npos;
}

// Walks child edges among the concepts left over by Kahn's algorithm until a
// concept repeats. Every leftover concept has a leftover child, so this halts
// on a cycle.
std::vector<ConceptId> find_cycle(const Ontology& o, const std::set<ConceptId>& leftover) {
  std::map<ConceptId, std::size_t> seen;
  std::vector<ConceptId> path;
  ConceptId cur = *leftover.begin();
  while (!seen.count(cur)) {
    seen[cur] = path.size();
    path.push_back(cur);
    const ConceptId* next = nullptr;
    for (const auto& child : o.children_of(cur)) {
      if (leftover.count(child)) {
        next = &child;
        break;
      }
    }
    if (!next) return {};
    cur = *next;
  }
  std::vector<ConceptId> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen[cur]), path.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

}  // namespace

ValidationReport validate(const Ontology& o, const ValidationOptions& options) {
  ValidationReport report;
  auto& v = report.violations;

  for (const auto& c : o.concepts())
    if (bad_id(c.value)) v.push_back("invalid concept id: '" + c.value + "'");

  bool dangling = false;
  for (const auto& r : o.relationships()) {
    if (r.source == r.target) {
      v.push_back("self-loop: " + to_string(r));
      dangling = true;
    }
    if (!o.contains(r.source)) {
      v.push_back("unknown source in " + to_string(r));
      dangling = true;
    }
    if (!o.contains(r.target)) {
      v.push_back("unknown target in " + to_string(r));
      dangling = true;
    }
  }
  for (const auto& a : o.attributes())
    if (!o.contains(a.concept_id)) v.push_back("unknown concept in " + to_string(a));

  auto roots = o.roots();
  if (roots.empty()) {
    v.push_back("no root");
  } else if (roots.size() > 1) {
    std::string msg = "multiple roots: " + std::to_string(roots.size());
    (options.single_root ? v : report.warnings).push_back(msg);
  }

  if (!dangling) {
    std::vector<ConceptId> order;
    if (!topological_order(o, order)) {
      std::set<ConceptId> leftover(o.concepts().begin(), o.concepts().end());
      for (const auto& c : order) leftover.erase(c);
      auto cycle = find_cycle(o, leftover);
      std::string msg = "cycle: ";
      for (std::size_t i = 0; i < cycle.size(); ++i) msg += (i ? "," : "") + cycle[i].value;
      v.push_back(msg);
    }
  }
  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (ok()) os << "ok";
  for (const auto& s : violations) os << (os.tellp() ? "; " : "") << s;
  for (const auto& s : warnings) os << "; warning: " << s;
  return os.str();
}

std::string to_string(const Element& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ConceptId>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, Relationship>) {
          return "(" + x.source.value + "," + x.type + "," + x.target.value + ")";
        } else {
          return "(" + x.concept_id.value + "," + x.name + "," + x.value + ")";
        }
      },
      e);
}

}  // namespace evomap
