#include "evomap/synth.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "evomap/error.hpp"

namespace evomap {

namespace {

constexpr std::array<std::string_view, kEditKindCount> kEditNames = {
    "insertLeaf", "deleteLeaf", "insertSubtree", "deleteSubtree", "retype",  "reparent",
    "setObsolete", "unsetObsolete", "rename",     "merge",         "split",  "substitute"};

constexpr std::size_t kDescendantCap = 64;

// Mutable ontology used while generating and replaying scripts. Every concept
// remembers the old-version concepts it descends from; those origins become
// the ground-truth correspondence.
class State {
 public:
  explicit State(const Ontology& o) {
    for (const auto& c : o.concepts()) {
      add_concept(c.value);
      origins_[c.value].insert(c.value);
    }
    for (const auto& r : o.relationships()) add_edge(r.source.value, r.target.value, r.type);
    for (const auto& a : o.attributes()) attrs_[a.concept_id.value].emplace(a.name, a.value);
  }

  const std::vector<std::string>& alive() const { return alive_; }
  bool exists(const std::string& c) const { return pos_.count(c) != 0; }
  const std::map<std::string, std::string>& parents(const std::string& c) const { return at(parents_, c); }
  const std::set<std::string>& children(const std::string& c) const { return at(children_, c); }
  const std::string* attr(const std::string& c, const std::string& name) const {
    auto it = attrs_.find(c);
    if (it == attrs_.end()) return nullptr;
    auto jt = it->second.find(name);
    return jt == it->second.end() ? nullptr : &jt->second;
  }

  /// Descendants of `c` (excluding `c`), or nothing when more than `cap`.
  std::optional<std::vector<std::string>> descendants(const std::string& c, std::size_t cap) const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen{c};
    std::vector<std::string> stack{c};
    while (!stack.empty()) {
      std::string x = std::move(stack.back());
      stack.pop_back();
      for (const auto& ch : children(x)) {
        if (!seen.insert(ch).second) continue;
        if (out.size() == cap) return std::nullopt;
        out.push_back(ch);
        stack.push_back(ch);
      }
    }
    return out;
  }

  void apply(const EditStep& s) {
    const auto& a = s.args;
    auto need = [&](std::size_t n, bool exact = true) {
      if (exact ? a.size() != n : a.size() < n)
        fail(s, "wrong number of arguments");
    };
    switch (s.kind) {
      case EditKind::InsertLeaf:
        need(3);
        require_new(s, a[0]);
        require(s, a[1]);
        add_concept(a[0]);
        set_name(a[0]);
        add_edge(a[0], a[1], a[2]);
        break;
      case EditKind::DeleteLeaf:
        need(1);
        require(s, a[0]);
        if (!children(a[0]).empty()) fail(s, a[0] + " is not a leaf");
        drop_concept(a[0]);
        break;
      case EditKind::InsertSubtree: {
        need(3, false);
        if ((a.size() - 3) % 2 != 0) fail(s, "wrong number of arguments");
        require(s, a[2]);
        require_new(s, a[1]);
        add_concept(a[1]);
        set_name(a[1]);
        add_edge(a[1], a[2], a[0]);
        for (std::size_t i = 3; i < a.size(); i += 2) {
          require_new(s, a[i]);
          require(s, a[i + 1]);
          add_concept(a[i]);
          set_name(a[i]);
          add_edge(a[i], a[i + 1], a[0]);
        }
        break;
      }
      case EditKind::DeleteSubtree: {
        need(1);
        require(s, a[0]);
        auto desc = descendants(a[0], alive_.size());
        std::unordered_set<std::string> members(desc->begin(), desc->end());
        members.insert(a[0]);
        for (const auto& d : *desc)
          for (const auto& [p, _] : parents(d))
            if (!members.count(p)) fail(s, d + " has a parent outside the subtree");
        for (auto it = desc->rbegin(); it != desc->rend(); ++it) drop_concept(*it);
        drop_concept(a[0]);
        break;
      }
      case EditKind::Retype: {
        need(3);
        auto it = parents_[a[0]].find(a[1]);
        if (it == parents_[a[0]].end()) fail(s, "no relationship " + a[0] + " -> " + a[1]);
        if (it->second == a[2]) fail(s, "type unchanged");
        it->second = a[2];
        break;
      }
      case EditKind::Reparent: {
        need(3);
        require(s, a[2]);
        auto& ps = parents_[a[0]];
        auto it = ps.find(a[1]);
        if (it == ps.end()) fail(s, "no relationship " + a[0] + " -> " + a[1]);
        if (a[2] == a[0] || ps.count(a[2])) fail(s, "invalid new parent " + a[2]);
        auto desc = descendants(a[0], alive_.size());
        if (std::find(desc->begin(), desc->end(), a[2]) != desc->end()) fail(s, "would create a cycle");
        std::string type = it->second;
        remove_edge(a[0], a[1]);
        add_edge(a[0], a[2], type);
        break;
      }
      case EditKind::SetObsolete:
      case EditKind::UnsetObsolete: {
        need(1);
        require(s, a[0]);
        const bool set = s.kind == EditKind::SetObsolete;
        auto& attrs = attrs_[a[0]];
        auto it = attrs.find("obsolete");
        if (it == attrs.end() || it->second != (set ? "false" : "true")) fail(s, "obsolete status mismatch");
        it->second = set ? "true" : "false";
        break;
      }
      case EditKind::Rename: {
        need(2);
        require(s, a[0]);
        auto& attrs = attrs_[a[0]];
        auto it = attrs.find("name");
        if (it == attrs.end() || it->second == a[1]) fail(s, "name unchanged or missing");
        it->second = a[1];
        break;
      }
      case EditKind::Merge: {
        need(2, false);
        require(s, a[0]);
        for (std::size_t i = 1; i < a.size(); ++i) {
          require(s, a[i]);
          if (a[i] == a[0] || !children(a[i]).empty()) fail(s, a[i] + " cannot be merged");
          auto& o = origins_[a[0]];
          o.insert(origins_[a[i]].begin(), origins_[a[i]].end());
          drop_concept(a[i]);
        }
        break;
      }
      case EditKind::Split: {
        need(2, false);
        require(s, a[0]);
        if (parents(a[0]).empty()) fail(s, a[0] + " has no parent");
        auto ps = parents(a[0]);
        for (std::size_t i = 1; i < a.size(); ++i) {
          require_new(s, a[i]);
          add_concept(a[i]);
          set_name(a[i]);
          for (const auto& [p, type] : ps) add_edge(a[i], p, type);
          origins_[a[i]] = origins_[a[0]];
        }
        break;
      }
      case EditKind::Substitute: {
        need(2);
        require(s, a[0]);
        require_new(s, a[1]);
        add_concept(a[1]);
        auto ps = parents(a[0]);
        auto cs = children(a[0]);
        std::map<std::string, std::string> child_types;
        for (const auto& c : cs) child_types[c] = parents(c).at(a[0]);
        auto attrs = attrs_[a[0]];
        auto origins = origins_[a[0]];
        drop_concept_edges_too(a[0]);
        for (const auto& [p, type] : ps) add_edge(a[1], p, type);
        for (const auto& [c, type] : child_types) add_edge(c, a[1], type);
        attrs_[a[1]] = std::move(attrs);
        origins_[a[1]] = std::move(origins);
        break;
      }
    }
  }

  Ontology to_ontology(std::string label) const {
    std::set<ConceptId> concepts;
    std::set<Relationship> rels;
    std::set<Attribute> attrs;
    for (const auto& c : alive_) {
      concepts.emplace(c);
      for (const auto& [p, type] : parents(c)) rels.insert({ConceptId(c), type, ConceptId(p)});
      if (auto it = attrs_.find(c); it != attrs_.end())
        for (const auto& [n, v] : it->second) attrs.insert({ConceptId(c), n, v});
    }
    return Ontology(std::move(label), std::move(concepts), std::move(rels), std::move(attrs));
  }

  MatchMapping match() const {
    MatchMapping m;
    for (const auto& c : alive_)
      if (auto it = origins_.find(c); it != origins_.end())
        for (const auto& o : it->second) m.add(ConceptId(o), ConceptId(c));
    return m;
  }

 private:
  template <typename M>
  static const typename M::mapped_type& at(const M& m, const std::string& k) {
    static const typename M::mapped_type empty;
    auto it = m.find(k);
    return it == m.end() ? empty : it->second;
  }

  [[noreturn]] static void fail(const EditStep& s, const std::string& what) {
    throw Error("inapplicable " + std::string(edit_kind_name(s.kind)) + " step: " + what);
  }
  void require(const EditStep& s, const std::string& c) const {
    if (!exists(c)) fail(s, "unknown concept " + c);
  }
  void require_new(const EditStep& s, const std::string& c) const {
    if (exists(c)) fail(s, "concept " + c + " already exists");
  }

  void add_concept(const std::string& c) {
    pos_.emplace(c, alive_.size());
    alive_.push_back(c);
  }
  void set_name(const std::string& c) { attrs_[c]["name"] = "label " + c; }
  void add_edge(const std::string& s, const std::string& t, const std::string& type) {
    parents_[s][t] = type;
    children_[t].insert(s);
  }
  void remove_edge(const std::string& s, const std::string& t) {
    parents_[s].erase(t);
    children_[t].erase(s);
  }

  // Removes a concept together with its outgoing relationships and attributes.
  void drop_concept(const std::string& c) {
    for (const auto& [p, _] : parents(c)) children_[p].erase(c);
    parents_.erase(c);
    children_.erase(c);
    attrs_.erase(c);
    origins_.erase(c);
    std::size_t i = pos_.at(c);
    pos_[alive_.back()] = i;
    std::swap(alive_[i], alive_.back());
    alive_.pop_back();
    pos_.erase(c);
  }

  void drop_concept_edges_too(const std::string& c) {
    for (const auto& ch : std::set<std::string>(children(c))) remove_edge(ch, c);
    drop_concept(c);
  }

  std::vector<std::string> alive_;
  std::unordered_map<std::string, std::size_t> pos_;
  std::unordered_map<std::string, std::map<std::string, std::string>> parents_;
  std::unordered_map<std::string, std::set<std::string>> children_;
  std::unordered_map<std::string, std::map<std::string, std::string>> attrs_;
  std::unordered_map<std::string, std::set<std::string>> origins_;
};

class Generator {
 public:
  Generator(std::uint64_t seed, const SynthOptions& options) : rng_(seed), options_(options) {}

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(unsigned percent) { return rng_() % 100 < percent; }
  std::string type() { return chance(80) ? "is_a" : "part_of"; }

  Ontology random_dag(std::size_t size, const std::string& label) {
    std::set<ConceptId> concepts;
    std::set<Relationship> rels;
    std::set<Attribute> attrs;
    for (std::size_t i = 0; i < size; ++i) {
      ConceptId c("c" + std::to_string(i));
      concepts.insert(c);
      attrs.insert({c, "name", "label " + c.value});
      if (chance(30)) attrs.insert({c, "obsolete", chance(85) ? "false" : "true"});
      if (i == 0) continue;
      std::size_t p = pick(i);
      rels.insert({c, type(), ConceptId("c" + std::to_string(p))});
      if (i > 1 && chance(10)) {
        std::size_t q = pick(i);
        if (q != p) rels.insert({c, type(), ConceptId("c" + std::to_string(q))});
      }
    }
    return Ontology(label, std::move(concepts), std::move(rels), std::move(attrs));
  }

  /// Draws one applicable step for `st`, or nothing.
  std::optional<EditStep> draw(const State& st, EditKind kind) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      if (auto s = try_draw(st, kind)) return s;
    }
    return std::nullopt;
  }

  void mark(const State& st, const EditStep& s) {
    if (!options_.clean) return;
    auto touch = [&](const std::string& c) {
      touched_.insert(c);
      if (st.exists(c))
        for (const auto& [p, _] : st.parents(c)) touched_.insert(p);
    };
    for (std::size_t i = 0; i < s.args.size(); ++i) {
      if (s.kind == EditKind::InsertSubtree && i == 0) continue;
      if ((s.kind == EditKind::Retype && i == 2) || (s.kind == EditKind::Rename && i == 1)) continue;
      touch(s.args[i]);
    }
    if (s.kind == EditKind::DeleteSubtree || s.kind == EditKind::Substitute) {
      if (auto d = st.descendants(s.args[0], kDescendantCap))
        for (const auto& x : *d) touched_.insert(x);
      for (const auto& c : st.children(s.args[0])) touched_.insert(c);
    }
  }

 private:
  std::string fresh() { return "n" + std::to_string(next_id_++); }

  bool free(const State& st, const std::string& c) const {
    if (!options_.clean) return true;
    if (touched_.count(c)) return false;
    for (const auto& [p, _] : st.parents(c))
      if (touched_.count(p)) return false;
    return true;
  }

  const std::string& any(const State& st) { return st.alive()[pick(st.alive().size())]; }

  std::size_t arity() { return options_.arity ? options_.arity : 2 + pick(3); }

  std::optional<EditStep> try_draw(const State& st, EditKind kind) {
    EditStep s;
    s.kind = kind;
    const std::string& c = any(st);
    const bool protected_root = c == "c0";
    switch (kind) {
      case EditKind::InsertLeaf:
        if (!free(st, c)) return std::nullopt;
        s.args = {fresh(), c, type()};
        return s;
      case EditKind::DeleteLeaf:
        if (protected_root || !st.children(c).empty() || !free(st, c)) return std::nullopt;
        s.args = {c};
        return s;
      case EditKind::InsertSubtree: {
        if (!free(st, c)) return std::nullopt;
        std::string root = fresh();
        s.args = {type(), root, c};
        std::vector<std::pair<std::string, int>> nodes{{root, 0}};
        std::size_t extra = 2 + pick(3);
        for (std::size_t i = 0; i < extra; ++i) {
          std::size_t p;
          do p = pick(nodes.size());
          while (nodes[p].second >= 2);
          std::string x = fresh();
          s.args.push_back(x);
          s.args.push_back(nodes[p].first);
          nodes.emplace_back(x, nodes[p].second + 1);
        }
        return s;
      }
      case EditKind::DeleteSubtree: {
        if (protected_root || st.children(c).empty() || !free(st, c)) return std::nullopt;
        auto desc = st.descendants(c, 12);
        if (!desc) return std::nullopt;
        std::unordered_set<std::string> members(desc->begin(), desc->end());
        members.insert(c);
        for (const auto& d : *desc) {
          if (options_.clean && touched_.count(d)) return std::nullopt;
          for (const auto& [p, _] : st.parents(d))
            if (!members.count(p)) return std::nullopt;
        }
        s.args = {c};
        return s;
      }
      case EditKind::Retype: {
        const auto& ps = st.parents(c);
        if (ps.empty() || !free(st, c)) return std::nullopt;
        auto it = std::next(ps.begin(), static_cast<long>(pick(ps.size())));
        s.args = {c, it->first, it->second == "is_a" ? "part_of" : "is_a"};
        return s;
      }
      case EditKind::Reparent: {
        const auto& ps = st.parents(c);
        if (protected_root || ps.empty() || !free(st, c)) return std::nullopt;
        auto it = std::next(ps.begin(), static_cast<long>(pick(ps.size())));
        const std::string& to = any(st);
        if (to == c || ps.count(to) || !free(st, to)) return std::nullopt;
        auto desc = st.descendants(c, kDescendantCap);
        if (!desc || std::find(desc->begin(), desc->end(), to) != desc->end()) return std::nullopt;
        s.args = {c, it->first, to};
        return s;
      }
      case EditKind::SetObsolete:
      case EditKind::UnsetObsolete: {
        const std::string* v = st.attr(c, "obsolete");
        const char* want = kind == EditKind::SetObsolete ? "false" : "true";
        if (!v || *v != want || !free(st, c)) return std::nullopt;
        s.args = {c};
        return s;
      }
      case EditKind::Rename: {
        const std::string* v = st.attr(c, "name");
        if (!v || !free(st, c)) return std::nullopt;
        s.args = {c, *v + " (renamed " + std::to_string(next_id_++) + ")"};
        return s;
      }
      case EditKind::Merge: {
        if (!free(st, c)) return std::nullopt;
        std::size_t k = arity();
        s.args = {c};
        std::set<std::string> chosen;
        for (std::size_t attempt = 0; chosen.size() + 1 < k && attempt < 64 + 16 * k; ++attempt) {
          const std::string& x = any(st);
          if (x == c || x == "c0" || !st.children(x).empty() || !free(st, x) || chosen.count(x)) continue;
          if (st.parents(c).count(x)) continue;
          chosen.insert(x);
        }
        if (chosen.size() + 1 < k) return std::nullopt;
        s.args.insert(s.args.end(), chosen.begin(), chosen.end());
        return s;
      }
      case EditKind::Split: {
        if (protected_root || st.parents(c).empty() || !free(st, c)) return std::nullopt;
        s.args = {c};
        for (std::size_t i = 1; i < arity(); ++i) s.args.push_back(fresh());
        return s;
      }
      case EditKind::Substitute: {
        if (protected_root || !free(st, c)) return std::nullopt;
        for (const auto& ch : st.children(c))
          if (options_.clean && touched_.count(ch)) return std::nullopt;
        s.args = {c, fresh()};
        return s;
      }
    }
    return std::nullopt;
  }

  std::mt19937_64 rng_;
  SynthOptions options_;
  std::unordered_set<std::string> touched_;
  std::uint64_t next_id_ = 0;
};

}  // namespace

std::string_view edit_kind_name(EditKind k) { return kEditNames[static_cast<std::size_t>(k)]; }

std::string serialize_script(const EditScript& s) {
  std::string out = "#evomap-script v1 seed=" + std::to_string(s.seed) + "\n";
  for (const auto& step : s.steps) {
    out += edit_kind_name(step.kind);
    for (const auto& a : step.args) {
      out += '\t';
      out += a;
    }
    out += '\n';
  }
  return out;
}

EditScript parse_script(std::string_view doc) {
  EditScript s;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < doc.size()) {
    std::size_t end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    std::string_view line = doc.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "seed=";
      if (auto p = line.find(key); p != std::string_view::npos)
        s.seed = std::stoull(std::string(line.substr(p + key.size())));
      continue;
    }
    std::vector<std::string> fields;
    std::size_t f = 0;
    while (true) {
      std::size_t t = line.find('\t', f);
      fields.emplace_back(line.substr(f, t == std::string_view::npos ? std::string_view::npos : t - f));
      if (t == std::string_view::npos) break;
      f = t + 1;
    }
    auto it = std::find(kEditNames.begin(), kEditNames.end(), fields[0]);
    if (it == kEditNames.end()) throw ParseError(lineno, "unknown edit kind " + fields[0]);
    EditStep step;
    step.kind = static_cast<EditKind>(it - kEditNames.begin());
    step.args.assign(fields.begin() + 1, fields.end());
    s.steps.push_back(std::move(step));
  }
  return s;
}

SynthResult synthesize(std::uint64_t seed, std::size_t size, std::size_t edit_count, const SynthOptions& options) {
  if (size == 0) throw Error("synthetic ontology needs at least one concept");
  Generator gen(seed, options);
  const std::string base = "synth-" + std::to_string(seed);
  SynthResult r;
  r.o1 = gen.random_dag(size, base + "-v1");
  r.script.seed = seed;

  std::vector<EditKind> kinds = options.kinds;
  if (kinds.empty())
    for (std::size_t k = 0; k < kEditKindCount; ++k) kinds.push_back(static_cast<EditKind>(k));

  State st(r.o1);
  std::size_t failures = 0;
  while (r.script.steps.size() < edit_count) {
    EditKind kind = kinds[gen.pick(kinds.size())];
    auto step = gen.draw(st, kind);
    if (!step) {
      if (++failures > 64 * kinds.size() + edit_count)
        throw Error("cannot place " + std::to_string(edit_count) + " edits on " + std::to_string(size) +
                    " concepts");
      continue;
    }
    gen.mark(st, *step);
    st.apply(*step);
    r.script.steps.push_back(std::move(*step));
  }
  r.o2 = st.to_ontology(base + "-v2");
  r.match = st.match();
  return r;
}

Ontology apply_script(const Ontology& o, const EditScript& s, MatchMapping* match) {
  State st(o);
  for (const auto& step : s.steps) st.apply(step);
  if (match) *match = st.match();
  return st.to_ontology(o.version_label() + "+script");
}

}  // namespace evomap
