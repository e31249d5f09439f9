#include "evomap/stats.hpp"

#include <cstdio>

namespace evomap {

namespace {

std::size_t count(const DiffStats& s, OpKind k) { return s.by_kind[static_cast<std::size_t>(k)]; }

}  // namespace

DiffStats compute_stats(const DiffMapping& d) {
  DiffStats s;
  for (OpId id : d.live_ids()) {
    OpKind k = d.record(id).op.kind;
    ++s.by_kind[static_cast<std::size_t>(k)];
    ++(is_basic(k) ? s.basic : s.complex);
    ++s.total;
  }
  auto sum = [&](std::initializer_list<OpKind> kinds) {
    std::size_t n = 0;
    for (OpKind k : kinds) n += count(s, k);
    return n;
  };
  s.rows = {
      {"add", sum({OpKind::AddC, OpKind::AddR, OpKind::AddA})},
      {"del", sum({OpKind::DelC, OpKind::DelR, OpKind::DelA})},
      {"map", sum({OpKind::MapC, OpKind::MapR, OpKind::MapA})},
      {"addLeaf", count(s, OpKind::AddLeaf)},
      {"delLeaf", count(s, OpKind::DelLeaf)},
      {"merge", count(s, OpKind::Merge)},
      {"split", count(s, OpKind::Split)},
      {"move", count(s, OpKind::Move)},
      {"substitute", count(s, OpKind::Substitute)},
      {"toObsolete", count(s, OpKind::ToObsolete)},
      {"revokeObsolete", count(s, OpKind::RevokeObsolete)},
      {"addSubGraph", count(s, OpKind::AddSubGraph)},
      {"delSubGraph", count(s, OpKind::DelSubGraph)},
      {"Σ", s.total},
  };
  return s;
}

std::string format_stats(const DiffMapping& compact, const DiffMapping* basic) {
  DiffStats s = compute_stats(compact);
  std::string out = "kind\tcount\n";
  for (const auto& [label, n] : s.rows) out += label + '\t' + std::to_string(n) + '\n';
  out += "\nelement\tadd\tdel\tmap\n";
  const struct {
    const char* name;
    OpKind add, del, map;
  } groups[] = {{"concept", OpKind::AddC, OpKind::DelC, OpKind::MapC},
                {"relationship", OpKind::AddR, OpKind::DelR, OpKind::MapR},
                {"attribute", OpKind::AddA, OpKind::DelA, OpKind::MapA}};
  for (const auto& g : groups)
    out += std::string(g.name) + '\t' + std::to_string(count(s, g.add)) + '\t' + std::to_string(count(s, g.del)) +
           '\t' + std::to_string(count(s, g.map)) + '\n';
  if (basic) {
    std::size_t nb = basic->live_count();
    char ratio[32];
    if (nb == 0)
      std::snprintf(ratio, sizeof ratio, "n/a");
    else
      std::snprintf(ratio, sizeof ratio, "%.1f%%", 100.0 * static_cast<double>(s.total) / static_cast<double>(nb));
    out += "\n|diff_basic|\t" + std::to_string(nb) + '\n';
    out += "|diff_compact|\t" + std::to_string(s.total) + '\n';
    out += "#basic\t" + std::to_string(s.basic) + '\n';
    out += "#complex\t" + std::to_string(s.complex) + '\n';
    out += "ratio\t" + std::string(ratio) + '\n';
  }
  return out;
}

}  // namespace evomap
