#include "evomap/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include "evomap/error.hpp"

namespace evomap {

namespace {

// Splits into lines, dropping a trailing CR. The last line may lack LF.
std::vector<std::string_view> split_lines(std::string_view doc) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < doc.size()) {
    std::size_t end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    std::string_view line = doc.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find('\t', start);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

constexpr std::string_view kVersionComment = "# version: ";

}  // namespace

Ontology parse_ontology(std::string_view doc, const OntologyParseOptions& options) {
  enum class Section { None, Concepts, Relationships, Attributes };
  Section section = Section::None;
  std::string label = options.version_label;
  std::set<ConceptId> concepts;
  std::set<Relationship> relationships;
  std::set<Attribute> attributes;

  auto lines = split_lines(doc);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (line.empty() || is_blank(line)) continue;
    if (line.front() == '#') {
      if (line.substr(0, kVersionComment.size()) == kVersionComment && options.version_label.empty())
        label = std::string(line.substr(kVersionComment.size()));
      continue;
    }
    if (line.front() == '[') {
      Section next;
      if (line == "[concepts]")
        next = Section::Concepts;
      else if (line == "[relationships]")
        next = Section::Relationships;
      else if (line == "[attributes]")
        next = Section::Attributes;
      else
        throw ParseError(lineno, "unknown section " + std::string(line));
      if (next <= section) throw ParseError(lineno, "section out of order: " + std::string(line));
      section = next;
      continue;
    }
    switch (section) {
      case Section::None:
        throw ParseError(lineno, "content before [concepts]");
      case Section::Concepts: {
        if (line.find('\t') != std::string_view::npos)
          throw ParseError(lineno, "concept id contains a tab");
        if (!concepts.emplace(std::string(line)).second)
          throw ParseError(lineno, "duplicate concept " + std::string(line));
        break;
      }
      case Section::Relationships: {
        auto f = split_tabs(line);
        if (f.size() != 3 || f[0].empty() || f[1].empty() || f[2].empty())
          throw ParseError(lineno, "expected <source>\\t<type>\\t<target>");
        Relationship r{ConceptId(std::string(f[0])), std::string(f[1]), ConceptId(std::string(f[2]))};
        if (!concepts.count(r.source)) throw ParseError(lineno, "undeclared id " + r.source.value);
        if (!concepts.count(r.target)) throw ParseError(lineno, "undeclared id " + r.target.value);
        if (r.source == r.target) throw ParseError(lineno, "self-loop on " + r.source.value);
        if (!relationships.insert(std::move(r)).second)
          throw ParseError(lineno, "duplicate relationship");
        break;
      }
      case Section::Attributes: {
        auto f = split_tabs(line);
        if (f.size() != 3 || f[0].empty() || f[1].empty())
          throw ParseError(lineno, "expected <concept>\\t<name>\\t<value>");
        Attribute a{ConceptId(std::string(f[0])), std::string(f[1]), std::string(f[2])};
        if (!concepts.count(a.concept_id)) throw ParseError(lineno, "undeclared id " + a.concept_id.value);
        if (!attributes.insert(std::move(a)).second) throw ParseError(lineno, "duplicate attribute");
        break;
      }
    }
  }

  Ontology o(std::move(label), std::move(concepts), std::move(relationships), std::move(attributes));
  if (options.validate) {
    auto report = validate(o, options.validation);
    if (!report.ok()) throw ValidationError("invalid ontology: " + report.summary());
  }
  return o;
}

std::string serialize_ontology(const Ontology& o) {
  auto emit_sorted = [](std::string& out, std::vector<std::string>& lines) {
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) {
      out += l;
      out += '\n';
    }
  };
  std::string out;
  if (!o.version_label().empty()) {
    out += kVersionComment;
    out += o.version_label();
    out += '\n';
  }
  std::vector<std::string> lines;
  out += "[concepts]\n";
  for (const auto& c : o.concepts()) lines.push_back(c.value);
  emit_sorted(out, lines);
  lines.clear();
  out += "[relationships]\n";
  for (const auto& r : o.relationships())
    lines.push_back(r.source.value + '\t' + r.type + '\t' + r.target.value);
  emit_sorted(out, lines);
  lines.clear();
  out += "[attributes]\n";
  for (const auto& a : o.attributes()) lines.push_back(a.concept_id.value + '\t' + a.name + '\t' + a.value);
  emit_sorted(out, lines);
  return out;
}

MatchMapping parse_match(std::string_view doc, const Ontology& o1, const Ontology& o2) {
  MatchMapping m;
  auto lines = split_lines(doc);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty() || line.front() == '#' || is_blank(line)) continue;
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    auto f = split_tabs(line);
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw MatchError(where + "expected <old_id>\\t<new_id>");
    ConceptId a{std::string(f[0])}, b{std::string(f[1])};
    if (!o1.contains(a)) throw MatchError(where + "unknown old id " + a.value);
    if (!o2.contains(b)) throw MatchError(where + "unknown new id " + b.value);
    m.add(std::move(a), std::move(b));
  }
  return m;
}

std::string serialize_match(const MatchMapping& m) {
  std::vector<std::string> lines;
  for (const auto& [a, b] : m.pairs()) lines.push_back(a.value + '\t' + b.value);
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Change operations

namespace {

using Triple = std::array<std::string, 3>;
using Arg = std::variant<std::string, ConceptSet, Triple>;

class OpReader {
 public:
  explicit OpReader(std::string_view s) : s_(s) {}

  ChangeOp read() {
    std::size_t open = s_.find('(');
    if (open == std::string_view::npos || open == 0) fail("expected NAME(args)");
    std::string_view name = s_.substr(0, open);
    auto kind = op_kind_from_name(name);
    if (!kind) fail("unknown op name " + std::string(name));
    pos_ = open + 1;
    std::vector<Arg> args;
    args.push_back(read_arg());
    while (peek() == ',') {
      ++pos_;
      args.push_back(read_arg());
    }
    expect(')');
    if (pos_ != s_.size()) fail("trailing characters after op");
    return build(*kind, std::move(args));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, what + " in '" + std::string(s_) + "'");
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool is_meta(char c) {
    switch (c) {
      case '(': case ')': case '{': case '}': case ',': case '"':
      case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
        return true;
      default:
        return false;
    }
  }

  std::string read_id() {
    std::string out;
    if (peek() == '"') {
      ++pos_;
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated quoted id");
        char c = s_[pos_++];
        if (c == '"') {
          if (peek() == '"') {
            out += '"';
            ++pos_;
            continue;
          }
          return out;
        }
        out += c;
      }
    }
    while (pos_ < s_.size() && !is_meta(s_[pos_])) out += s_[pos_++];
    if (out.empty()) fail("expected id");
    return out;
  }

  Arg read_arg() {
    if (peek() == '{') {
      ++pos_;
      std::vector<ConceptId> items;
      if (peek() == '}') fail("malformed set literal: empty set");
      items.emplace_back(read_id());
      while (peek() == ',') {
        ++pos_;
        items.emplace_back(read_id());
      }
      if (peek() != '}') fail("malformed set literal");
      ++pos_;
      return make_set(std::move(items));
    }
    if (peek() == '(') {
      ++pos_;
      Triple t;
      t[0] = read_id();
      expect(',');
      t[1] = read_id();
      expect(',');
      t[2] = read_id();
      expect(')');
      return t;
    }
    return read_id();
  }

  ConceptId id_at(std::vector<Arg>& args, std::size_t i) {
    auto* s = std::get_if<std::string>(&args[i]);
    if (!s) fail("argument " + std::to_string(i + 1) + " must be an id");
    return ConceptId(std::move(*s));
  }
  ConceptSet set_at(std::vector<Arg>& args, std::size_t i) {
    auto* s = std::get_if<ConceptSet>(&args[i]);
    if (!s) fail("argument " + std::to_string(i + 1) + " must be a set");
    return std::move(*s);
  }
  Triple triple_at(std::vector<Arg>& args, std::size_t i) {
    auto* t = std::get_if<Triple>(&args[i]);
    if (!t) fail("argument " + std::to_string(i + 1) + " must be a triple");
    return std::move(*t);
  }
  Relationship rel_at(std::vector<Arg>& args, std::size_t i) {
    auto t = triple_at(args, i);
    return {ConceptId(std::move(t[0])), std::move(t[1]), ConceptId(std::move(t[2]))};
  }
  Attribute attr_at(std::vector<Arg>& args, std::size_t i) {
    auto t = triple_at(args, i);
    return {ConceptId(std::move(t[0])), std::move(t[1]), std::move(t[2])};
  }

  void arity(const std::vector<Arg>& args, std::size_t n, OpKind k) const {
    if (args.size() != n)
      fail("arity mismatch: " + std::string(op_name(k)) + " takes " + std::to_string(n) +
           " argument(s), got " + std::to_string(args.size()));
  }

  ChangeOp build(OpKind k, std::vector<Arg> a) {
    switch (k) {
      case OpKind::AddC: arity(a, 1, k); return op::addC(id_at(a, 0));
      case OpKind::DelC: arity(a, 1, k); return op::delC(id_at(a, 0));
      case OpKind::ToObsolete: arity(a, 1, k); return op::toObsolete(id_at(a, 0));
      case OpKind::RevokeObsolete: arity(a, 1, k); return op::revokeObsolete(id_at(a, 0));
      case OpKind::MapC: arity(a, 2, k); return op::mapC(id_at(a, 0), id_at(a, 1));
      case OpKind::Substitute: arity(a, 2, k); return op::substitute(id_at(a, 0), id_at(a, 1));
      case OpKind::Move: arity(a, 3, k); return op::move(id_at(a, 0), id_at(a, 1), id_at(a, 2));
      case OpKind::AddR: arity(a, 1, k); return op::addR(rel_at(a, 0));
      case OpKind::DelR: arity(a, 1, k); return op::delR(rel_at(a, 0));
      case OpKind::MapR: arity(a, 2, k); return op::mapR(rel_at(a, 0), rel_at(a, 1));
      case OpKind::AddA: arity(a, 1, k); return op::addA(attr_at(a, 0));
      case OpKind::DelA: arity(a, 1, k); return op::delA(attr_at(a, 0));
      case OpKind::MapA: arity(a, 2, k); return op::mapA(attr_at(a, 0), attr_at(a, 1));
      case OpKind::AddLeaf: arity(a, 2, k); return op::addLeaf(id_at(a, 0), set_at(a, 1));
      case OpKind::DelLeaf: arity(a, 2, k); return op::delLeaf(id_at(a, 0), set_at(a, 1));
      case OpKind::Split: arity(a, 2, k); return op::split(id_at(a, 0), set_at(a, 1));
      case OpKind::AddSubGraph: arity(a, 2, k); return op::addSubGraph(id_at(a, 0), set_at(a, 1));
      case OpKind::DelSubGraph: arity(a, 2, k); return op::delSubGraph(id_at(a, 0), set_at(a, 1));
      case OpKind::Merge: arity(a, 2, k); return op::merge(set_at(a, 0), id_at(a, 1));
    }
    fail("unknown op kind");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool is_builtin_rule_id(const std::string& id) {
  if (id.size() < 2 || (id[0] != 'b' && id[0] != 'c' && id[0] != 'a')) return false;
  return std::all_of(id.begin() + 1, id.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Serialization order key. Derived only from data that is itself serialized
// so that writing a parsed document reproduces it byte for byte.
Phase serialization_phase(const std::string& created_by, OpKind kind) {
  if (is_builtin_rule_id(created_by)) {
    switch (created_by[0]) {
      case 'b': return Phase::Basic;
      case 'c': return Phase::Complex;
      default: return Phase::Aggregation;
    }
  }
  return is_basic(kind) ? Phase::Basic : Phase::Complex;
}

constexpr std::string_view kDiffHeader = "#evomap-diff v1 kind=";
constexpr std::string_view kVersionsLine = "#versions\t";

}  // namespace

ChangeOp parse_op(std::string_view text) { return OpReader(text).read(); }

DiffMapping parse_diff(std::string_view doc) {
  auto lines = split_lines(doc);
  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i])) ++i;
  if (i == lines.size() || lines[i].substr(0, kDiffHeader.size()) != kDiffHeader)
    throw ParseError(i + 1, "missing header '#evomap-diff v1 kind=<basic|compact>'");
  std::string_view kind_text = lines[i].substr(kDiffHeader.size());
  DiffKind kind;
  if (kind_text == "basic")
    kind = DiffKind::Basic;
  else if (kind_text == "compact")
    kind = DiffKind::Compact;
  else
    throw ParseError(i + 1, "unknown diff kind " + std::string(kind_text));
  ++i;

  struct Entry {
    std::size_t lineno;
    ChangeOp op;
    std::string by;
    std::vector<std::size_t> from;
    bool dead = false;
    std::string dead_by;
  };
  std::vector<Entry> entries;
  std::string old_label, new_label;

  for (; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (line.empty() || is_blank(line)) continue;
    if (line.front() == '#') {
      if (line.substr(0, kVersionsLine.size()) == kVersionsLine) {
        auto f = split_tabs(line);
        if (f.size() != 3) throw ParseError(lineno, "expected #versions\\t<old>\\t<new>");
        old_label = std::string(f[1]);
        new_label = std::string(f[2]);
      }
      continue;
    }
    auto fields = split_tabs(line);
    Entry e;
    e.lineno = lineno;
    try {
      e.op = parse_op(fields[0]);
    } catch (const ParseError& err) {
      throw ParseError(lineno, err.what());
    }
    for (std::size_t f = 1; f < fields.size(); ++f) {
      std::string_view ann = fields[f];
      if (ann.substr(0, 3) == "by=") {
        e.by = std::string(ann.substr(3));
      } else if (ann.substr(0, 5) == "from=") {
        std::string_view rest = ann.substr(5);
        std::size_t start = 0;
        while (start <= rest.size()) {
          std::size_t end = rest.find(',', start);
          if (end == std::string_view::npos) end = rest.size();
          std::string_view num = rest.substr(start, end - start);
          if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw ParseError(lineno, "malformed lineage annotation");
          e.from.push_back(std::stoull(std::string(num)));
          start = end + 1;
        }
      } else if (ann == "dead") {
        e.dead = true;
      } else if (ann.substr(0, 5) == "dead=") {
        e.dead = true;
        e.dead_by = std::string(ann.substr(5));
      } else {
        throw ParseError(lineno, "unknown annotation " + std::string(ann));
      }
    }
    entries.push_back(std::move(e));
  }

  DiffMapping d(kind, std::move(old_label), std::move(new_label));
  for (auto& e : entries) {
    Phase phase = serialization_phase(e.by, e.op.kind);
    if (e.dead) {
      d.add_eliminated(std::move(e.op), phase, e.by, e.dead_by);
    } else {
      std::string canon = canonical_form(e.op);
      if (d.find_live(canon)) throw ParseError(e.lineno, "duplicate live op " + canon);
      d.add(std::move(e.op), phase, e.by);
    }
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    for (std::size_t ref : e.from) {
      if (ref == 0 || ref > entries.size() || ref == k + 1)
        throw ParseError(e.lineno, "lineage refers to op " + std::to_string(ref));
    }
    std::vector<OpId> ids(e.from.begin(), e.from.end());
    d.add_lineage(k + 1, ids);
  }
  return d;
}

std::string serialize_diff(const DiffMapping& d, bool with_lineage) {
  std::vector<const OpRecord*> recs;
  for (const auto& r : d.records())
    if (with_lineage || r.live) recs.push_back(&r);
  std::stable_sort(recs.begin(), recs.end(), [](const OpRecord* a, const OpRecord* b) {
    auto pa = serialization_phase(a->created_by, a->op.kind);
    auto pb = serialization_phase(b->created_by, b->op.kind);
    if (pa != pb) return pa < pb;
    if (a->canonical != b->canonical) return a->canonical < b->canonical;
    return a->id < b->id;
  });
  std::map<OpId, std::size_t> position;
  for (std::size_t i = 0; i < recs.size(); ++i) position[recs[i]->id] = i + 1;

  std::string out(kDiffHeader);
  out += d.kind() == DiffKind::Basic ? "basic" : "compact";
  out += '\n';
  if (!d.old_label().empty() || !d.new_label().empty()) {
    out += kVersionsLine;
    out += d.old_label();
    out += '\t';
    out += d.new_label();
    out += '\n';
  }
  for (const OpRecord* r : recs) {
    out += r->canonical;
    if (!r->created_by.empty()) {
      out += "\tby=";
      out += r->created_by;
    }
    if (with_lineage && !r->consumed.empty()) {
      std::vector<std::size_t> refs;
      for (OpId c : r->consumed) refs.push_back(position.at(c));
      std::sort(refs.begin(), refs.end());
      out += "\tfrom=";
      for (std::size_t k = 0; k < refs.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(refs[k]);
      }
    }
    if (!r->live) {
      out += "\tdead";
      if (!r->eliminated_by.empty()) {
        out += '=';
        out += r->eliminated_by;
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// OBO subset

namespace {

std::string strip_obo_comment(std::string_view v) {
  std::size_t bang = v.find(" !");
  if (bang != std::string_view::npos) v = v.substr(0, bang);
  return std::string(trim(v));
}

std::string obo_definition(std::string_view v) {
  v = trim(v);
  if (v.empty() || v.front() != '"') return std::string(v);
  std::string out;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) {
      out += v[++i];
    } else if (v[i] == '"') {
      return out;
    } else {
      out += v[i];
    }
  }
  return out;
}

}  // namespace

Ontology parse_obo_subset(std::string_view doc, const OboOptions& options, OboReport* report) {
  OboReport local;
  OboReport& rep = report ? *report : local;
  rep = OboReport{};

  std::set<ConceptId> concepts;
  std::vector<std::pair<std::size_t, Relationship>> rels;
  std::set<Attribute> attributes;

  enum class Stanza { Header, Term, Other };
  Stanza stanza = Stanza::Header;
  std::size_t stanza_line = 0;
  std::string id;
  bool obsolete = false;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> edges;

  auto finish_term = [&]() {
    if (stanza != Stanza::Term) return;
    if (id.empty()) throw ParseError(stanza_line, "[Term] stanza without id");
    ConceptId c(id);
    if (!concepts.insert(c).second) throw ParseError(stanza_line, "duplicate term id " + id);
    ++rep.terms;
    for (auto& [name, value] : attrs) attributes.insert({c, name, value});
    if (!obsolete && options.explicit_not_obsolete) attributes.insert({c, "obsolete", "false"});
    for (auto& [line, e] : edges) rels.emplace_back(line, Relationship{c, e.first, ConceptId(e.second)});
  };

  auto lines = split_lines(doc);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '!') continue;
    if (line.front() == '[') {
      finish_term();
      stanza_line = lineno;
      id.clear();
      obsolete = false;
      attrs.clear();
      edges.clear();
      if (line == "[Term]") {
        stanza = Stanza::Term;
      } else {
        stanza = Stanza::Other;
        ++rep.ignored_stanzas;
      }
      continue;
    }
    if (stanza != Stanza::Term) {
      ++rep.ignored_tags;
      continue;
    }
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(lineno, "expected <tag>: <value>");
    std::string_view tag = line.substr(0, colon);
    std::string_view value = trim(line.substr(colon + 1));
    if (tag == "id") {
      id = strip_obo_comment(value);
    } else if (tag == "name") {
      attrs.emplace_back("name", std::string(value));
    } else if (tag == "def") {
      attrs.emplace_back("definition", obo_definition(value));
    } else if (tag == "is_obsolete") {
      std::string v = strip_obo_comment(value);
      obsolete = v == "true";
      attrs.emplace_back("obsolete", v);
    } else if (tag == "is_a") {
      edges.emplace_back(lineno, std::pair<std::string, std::string>{"is_a", strip_obo_comment(value)});
    } else if (tag == "relationship") {
      std::string v = strip_obo_comment(value);
      std::size_t sp = v.find(' ');
      if (sp == std::string::npos) throw ParseError(lineno, "expected relationship: <type> <target>");
      edges.emplace_back(lineno, std::pair<std::string, std::string>{
                                     v.substr(0, sp), std::string(trim(std::string_view(v).substr(sp + 1)))});
    } else {
      ++rep.ignored_tags;
    }
  }
  finish_term();

  std::set<Relationship> relationships;
  for (auto& [line, r] : rels) {
    if (!concepts.count(r.target)) {
      if (!options.drop_dangling) throw ParseError(line, "dangling target " + r.target.value);
      rep.warnings.push_back("dropped dangling " + to_string(r));
      continue;
    }
    relationships.insert(std::move(r));
  }
  return Ontology(options.version_label, std::move(concepts), std::move(relationships),
                  std::move(attributes));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write " + path);
}

}  // namespace evomap
