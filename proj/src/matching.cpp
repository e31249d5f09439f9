#include "evomap/matching.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <tuple>
#include <unordered_map>

#include "evomap/error.hpp"

namespace evomap {

const std::vector<const MatchMapping::Pair*>& MatchMapping::by_new() const {
  const auto& all = pairs();
  if (!by_new_.empty() || all.empty()) return by_new_;
  // Self pairs already appear in new-id order; only the others need sorting.
  std::vector<const Pair*> self, other;
  for (const auto& p : all) (p.first == p.second ? self : other).push_back(&p);
  auto less = [](const Pair* x, const Pair* y) {
    return std::tie(x->second, x->first) < std::tie(y->second, y->first);
  };
  std::sort(other.begin(), other.end(), less);
  by_new_.resize(all.size());
  std::merge(self.begin(), self.end(), other.begin(), other.end(), by_new_.begin(), less);
  return by_new_;
}

MatchMapping MatchMapping::inverse() const {
  MatchMapping inv;
  for (const auto& [a, b] : pairs()) inv.add(b, a);
  return inv;
}

MatchMapping match_by_id(const Ontology& o1, const Ontology& o2) {
  std::set<MatchMapping::Pair> pairs;
  std::vector<ConceptId> common;
  std::set_intersection(o1.concepts().begin(), o1.concepts().end(), o2.concepts().begin(),
                        o2.concepts().end(), std::back_inserter(common));
  for (auto& c : common) pairs.emplace_hint(pairs.end(), c, c);
  return MatchMapping(std::move(pairs));
}

std::string normalize_label(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char ch : s) {
    if (std::isspace(ch)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(ch));
  }
  return out;
}

namespace {

// Root-path signatures are compared through polynomial hashes over the prime
// field 2^61-1. For a path [c, p, ..., root] the hash is
// g(c) + K*g(p) + K^2*... ; summing over all root paths of c gives
//   S(c) = g(c)*N(c) + K * sum_parents S(p),   N(c) = sum_parents N(p)
// which identifies the multiset of label sequences without enumerating the
// (possibly exponentially many) paths.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kMul1 = 0x1f3d5b79a3c2e4d1ULL % kPrime;
constexpr std::uint64_t kMul2 = 0x6a09e667f3bcc909ULL % kPrime;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t label_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h % (kPrime - 1) + 1;
}

using Signature = std::tuple<std::string, std::uint64_t, std::uint64_t, std::uint64_t>;

std::map<ConceptId, Signature> path_signatures(const Ontology& o, const std::string& label_attr) {
  std::unordered_map<std::string, std::string> labels;
  for (const auto& a : o.attributes()) {
    if (a.name != label_attr) continue;
    auto [it, inserted] = labels.emplace(a.concept_id.value, a.value);
    if (!inserted && a.value < it->second) it->second = a.value;
  }

  std::vector<ConceptId> order;
  if (!topological_order(o, order)) throw ValidationError("cannot match a cyclic ontology");
  std::reverse(order.begin(), order.end());

  struct Acc {
    std::uint64_t paths = 0, s1 = 0, s2 = 0;
  };
  std::unordered_map<std::string, Acc> acc;
  std::map<ConceptId, Signature> out;
  for (const auto& c : order) {
    auto lit = labels.find(c.value);
    std::string label = normalize_label(lit == labels.end() ? c.value : lit->second);
    std::uint64_t g = label_hash(label);
    Acc a;
    const auto& parents = o.parents_of(c);
    if (parents.empty()) {
      a.paths = 1;
      a.s1 = a.s2 = g;
    } else {
      std::uint64_t sum1 = 0, sum2 = 0;
      for (const auto& p : parents) {
        const Acc& pa = acc.at(p.value);
        a.paths = mod_add(a.paths, pa.paths);
        sum1 = mod_add(sum1, pa.s1);
        sum2 = mod_add(sum2, pa.s2);
      }
      a.s1 = mod_add(mod_mul(g, a.paths), mod_mul(kMul1, sum1));
      a.s2 = mod_add(mod_mul(g, a.paths), mod_mul(kMul2, sum2));
    }
    acc.emplace(c.value, a);
    out.emplace(c, Signature{std::move(label), a.paths, a.s1, a.s2});
  }
  return out;
}

}  // namespace

MatchMapping match_by_label_path(const Ontology& o1, const Ontology& o2,
                                 const std::string& label_attr) {
  auto sig1 = path_signatures(o1, label_attr);
  auto sig2 = path_signatures(o2, label_attr);
  std::map<Signature, std::vector<ConceptId>> by_sig;
  for (const auto& [c, s] : sig2) by_sig[s].push_back(c);
  std::set<MatchMapping::Pair> pairs;
  for (const auto& [a, s] : sig1) {
    auto it = by_sig.find(s);
    if (it == by_sig.end()) continue;
    for (const auto& b : it->second) pairs.emplace(a, b);
  }
  return MatchMapping(std::move(pairs));
}

MatchReport validate_match(const MatchMapping& m, const Ontology& o1, const Ontology& o2) {
  MatchReport report;
  report.notes.push_back(std::to_string(m.size()) + " matched");

  // Walks ids in ascending order alongside the sorted concept list, reporting
  // unknown ids and ids that occur in several pairs.
  auto scan = [&](auto&& ids, const Ontology& o, const char* side, const char* dir) {
    auto ci = o.concepts().begin();
    const auto ce = o.concepts().end();
    std::vector<std::string> multi;
    for (std::size_t i = 0; i < ids.size();) {
      const ConceptId& c = ids[i];
      std::size_t j = i + 1;
      while (j < ids.size() && ids[j] == c) ++j;
      while (ci != ce && *ci < c) ++ci;
      if (ci == ce || *ci != c) report.violations.push_back(std::string("unknown ") + side + " id: " + c.value);
      if (j - i > 1)
        multi.push_back("multi-match: " + std::string(side) + " " + c.value + " (" + std::to_string(j - i) +
                        " " + dir + ")");
      i = j;
    }
    report.notes.insert(report.notes.end(), multi.begin(), multi.end());
  };

  struct OldIds {
    const std::vector<MatchMapping::Pair>& p;
    std::size_t size() const { return p.size(); }
    const ConceptId& operator[](std::size_t i) const { return p[i].first; }
  };
  struct NewIds {
    const std::vector<const MatchMapping::Pair*>& p;
    std::size_t size() const { return p.size(); }
    const ConceptId& operator[](std::size_t i) const { return p[i]->second; }
  };
  scan(OldIds{m.pairs()}, o1, "old", "outgoing");
  scan(NewIds{m.by_new()}, o2, "new", "incoming");
  return report;
}

}  // namespace evomap
