#include "evomap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>

#include "evomap/diff.hpp"
#include "evomap/error.hpp"
#include "evomap/io.hpp"
#include "evomap/matching.hpp"
#include "evomap/migration.hpp"
#include "evomap/repo.hpp"
#include "evomap/rules.hpp"
#include "evomap/stats.hpp"
#include "evomap/synth.hpp"

namespace evomap {

namespace {

struct InputOptions {
  std::string format = "native";
};

struct MatchOptions {
  std::string matcher;
  std::string match_file;
};

Ontology load_ontology(const std::string& path, const InputOptions& in) {
  std::string text = read_file(path);
  try {
    if (in.format == "obo") {
      Ontology o = parse_obo_subset(text);
      auto report = validate(o);
      if (!report.ok()) throw ValidationError(report.summary());
      return o;
    }
    return parse_ontology(text);
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

DiffMapping load_diff(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_diff(text);
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

MatchMapping resolve_match(const MatchOptions& mo, const Ontology& o1, const Ontology& o2) {
  std::string matcher = mo.matcher;
  if (matcher.empty()) matcher = mo.match_file.empty() ? "id" : "file";
  if (matcher == "id") return match_by_id(o1, o2);
  if (matcher == "label-path") return match_by_label_path(o1, o2);
  if (mo.match_file.empty()) throw MatchError("--matcher file needs --match <file>");
  std::string text = read_file(mo.match_file);
  try {
    return parse_match(text, o1, o2);
  } catch (const MatchError& e) {
    throw MatchError(mo.match_file + ": " + e.what());
  }
}

AggMode parse_agg(const std::string& s) { return s == "literal" ? AggMode::Literal : AggMode::Fused; }

void add_format(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--format", in.format, "Ontology input format")
      ->check(CLI::IsMember({"native", "obo"}))
      ->capture_default_str();
}

void add_matcher(CLI::App* cmd, MatchOptions& mo) {
  cmd->add_option("--match", mo.match_file, "Match mapping file");
  cmd->add_option("--matcher", mo.matcher, "Matcher: id, label-path or file")
      ->check(CLI::IsMember({"id", "label-path", "file"}));
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Rule-based ontology version diff, migration and repository tool", "evomap"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    register_diff(app);
    register_migrate(app);
    register_invert(app);
    register_roundtrip(app);
    register_stats(app);
    register_match(app);
    register_synth(app);
    register_rules(app);
    register_repo(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitInput;
    }

    try {
      return action_();
    } catch (const MatchError& e) {
      err_ << "match error: " << e.what() << '\n';
      return kExitMatch;
    } catch (const MigrationError& e) {
      err_ << "migration error: " << e.what() << '\n';
      return kExitMigration;
    } catch (const RepoError& e) {
      err_ << "repository error: " << e.what() << '\n';
      return kExitInput;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitInput;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitInput;
    }
  }

 private:
  void register_diff(CLI::App& app) {
    auto* cmd = app.add_subcommand("diff", "Compute the basic and compact evolution mappings");
    cmd->add_option("--old", old_, "Old version")->required();
    cmd->add_option("--new", new_, "New version")->required();
    add_matcher(cmd, match_);
    add_format(cmd, input_);
    cmd->add_option("--out", out_file_, "Compact diff output")->required();
    cmd->add_option("--basic-out", basic_out_, "Basic diff output");
    add_agg(cmd);
    cmd->callback([this] {
      action_ = [this] {
        Ontology o1 = load_ontology(old_, input_);
        Ontology o2 = load_ontology(new_, input_);
        MatchMapping m = resolve_match(match_, o1, o2);
        DiffResult r = diff_evol_map_gen(o1, o2, m, builtin_catalog(), DiffOptions{parse_agg(agg_)});
        write_file(out_file_, serialize_diff(r.compact));
        if (!basic_out_.empty()) write_file(basic_out_, serialize_diff(r.basic));
        out_ << "basic=" << r.basic.live_count() << " compact=" << r.compact.live_count()
             << " aggregation-iterations=" << r.agg_iterations << " mode=" << agg_mode_name(parse_agg(agg_))
             << '\n';
        return kExitOk;
      };
    });
  }

  void register_migrate(CLI::App& app) {
    auto* cmd = app.add_subcommand("migrate", "Apply a diff to an ontology version");
    cmd->add_option("--in", old_, "Input version")->required();
    cmd->add_option("--diff", diff_, "Diff to apply")->required();
    cmd->add_option("--out", out_file_, "Migrated version output")->required();
    cmd->add_flag("--lenient", lenient_, "Warn instead of failing on redundant adds and deletes");
    add_format(cmd, input_);
    cmd->callback([this] {
      action_ = [this] {
        Ontology o = load_ontology(old_, input_);
        DiffMapping d = load_diff(diff_);
        if (d.kind() != DiffKind::Basic) {
          try {
            d = expand_to_basic(d);
          } catch (const Error& e) {
            throw Error(diff_ + ": compact diff cannot be expanded: " + e.what());
          }
        }
        if (!lenient_ && !d.old_label().empty() && !o.version_label().empty() &&
            d.old_label() != o.version_label())
          throw MigrationError("mapping inconsistent with version: diff is for '" + d.old_label() +
                               "' but the input is '" + o.version_label() + "'");
        MigrationOptions mo;
        mo.lenient = lenient_;
        MigrationReport report;
        Ontology result = ont_version_mig(o, d, mo, &report);
        for (const auto& w : report.warnings) err_ << "warning: " << w << '\n';
        write_file(out_file_, serialize_ontology(result));
        out_ << "applied=" << report.applied << " elements=" << result.element_count() << '\n';
        return kExitOk;
      };
    });
  }

  void register_invert(CLI::App& app) {
    auto* cmd = app.add_subcommand("invert", "Write the inverse of a diff");
    cmd->add_option("--diff", diff_, "Diff to invert")->required();
    cmd->add_option("--out", out_file_, "Inverse diff output")->required();
    cmd->callback([this] {
      action_ = [this] {
        write_file(out_file_, serialize_diff(invert_diff(load_diff(diff_))));
        return kExitOk;
      };
    });
  }

  void register_roundtrip(CLI::App& app) {
    auto* cmd = app.add_subcommand("roundtrip", "Migrate forward and back and compare element sets");
    cmd->add_option("--old", old_, "Old version")->required();
    cmd->add_option("--new", new_, "New version")->required();
    add_matcher(cmd, match_);
    add_format(cmd, input_);
    cmd->callback([this] {
      action_ = [this] {
        Ontology o1 = load_ontology(old_, input_);
        Ontology o2 = load_ontology(new_, input_);
        MatchMapping m = resolve_match(match_, o1, o2);
        RoundtripReport r = roundtrip(o1, o2, m, builtin_catalog());
        out_ << r.line() << '\n';
        if (r.passed()) return kExitOk;
        if (!r.forward_ok) err_ << "migrated old version differs from the new version\n";
        if (!r.backward_ok) err_ << "reverse migration does not restore the old version\n";
        return kExitRoundtrip;
      };
    });
  }

  void register_stats(CLI::App& app) {
    auto* cmd = app.add_subcommand("stats", "Count change operations per kind");
    cmd->add_option("--diff", diff_, "Diff to summarize")->required();
    cmd->add_option("--basic", basic_in_, "Basic diff for the size comparison");
    cmd->callback([this] {
      action_ = [this] {
        DiffMapping d = load_diff(diff_);
        if (basic_in_.empty()) {
          out_ << format_stats(d);
        } else {
          DiffMapping b = load_diff(basic_in_);
          out_ << format_stats(d, &b);
        }
        return kExitOk;
      };
    });
  }

  void register_match(CLI::App& app) {
    auto* cmd = app.add_subcommand("match", "Compute or check a match mapping");
    cmd->add_option("--old", old_, "Old version")->required();
    cmd->add_option("--new", new_, "New version")->required();
    add_matcher(cmd, match_);
    add_format(cmd, input_);
    cmd->add_option("--out", out_file_, "Match output (default: standard output)");
    cmd->callback([this] {
      action_ = [this] {
        Ontology o1 = load_ontology(old_, input_);
        Ontology o2 = load_ontology(new_, input_);
        MatchMapping m = resolve_match(match_, o1, o2);
        MatchReport report = validate_match(m, o1, o2);
        for (const auto& n : report.notes) err_ << "note: " << n << '\n';
        for (const auto& v : report.violations) err_ << "violation: " << v << '\n';
        if (out_file_.empty())
          out_ << serialize_match(m);
        else
          write_file(out_file_, serialize_match(m));
        return report.ok() ? kExitOk : kExitMatch;
      };
    });
  }

  void register_synth(CLI::App& app) {
    auto* cmd = app.add_subcommand("synth", "Generate a synthetic version pair with its edit script");
    cmd->add_option("--seed", seed_, "Random seed")->required();
    cmd->add_option("--size", size_, "Number of concepts")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--edits", edits_, "Number of edits")->required();
    cmd->add_option("--out-dir", out_dir_, "Output directory")->required();
    auto* clean = cmd->add_flag("--clean", "Keep edits independent (default)");
    cmd->add_flag("--dirty", dirty_, "Allow overlapping edits")->excludes(clean);
    cmd->callback([this] {
      action_ = [this] {
        SynthOptions so;
        so.clean = !dirty_;
        SynthResult r = synthesize(seed_, size_, edits_, so);
        std::filesystem::create_directories(out_dir_);
        std::filesystem::path dir(out_dir_);
        write_file((dir / "o1.ont").string(), serialize_ontology(r.o1));
        write_file((dir / "o2.ont").string(), serialize_ontology(r.o2));
        write_file((dir / "match.tsv").string(), serialize_match(r.match));
        write_file((dir / "script.txt").string(), serialize_script(r.script));
        out_ << "concepts=" << r.o1.concepts().size() << "->" << r.o2.concepts().size()
             << " edits=" << r.script.steps.size() << " matches=" << r.match.size() << '\n';
        return kExitOk;
      };
    });
  }

  void register_rules(CLI::App& app) {
    auto* cmd = app.add_subcommand("rules", "Inspect the rule catalog");
    cmd->require_subcommand(1);
    auto* list = cmd->add_subcommand("list", "List the built-in rules in execution order");
    list->callback([this] {
      action_ = [this] {
        RuleCatalog catalog = builtin_catalog();
        for (Phase p : {Phase::Basic, Phase::Complex, Phase::Aggregation})
          for (const Rule* r : catalog.phase(p))
            out_ << r->id << '\t' << phase_name(r->phase) << '\t' << r->order << '\t' << r->description << '\n';
        return kExitOk;
      };
    });
  }

  void register_repo(CLI::App& app) {
    auto* cmd = app.add_subcommand("repo", "Working repository of versions, matches and diffs");
    cmd->require_subcommand(1);
    repo_root_ = default_repo_root().string();
    cmd->add_option("--repo", repo_root_, "Repository root (default: $EVOMAP_REPO or .evomap)");

    cmd->add_subcommand("init", "Create a repository")->callback([this] {
      action_ = [this] {
        Repository::init(repo_root_);
        out_ << "initialized " << repo_root_ << '\n';
        return kExitOk;
      };
    });

    auto* put = cmd->add_subcommand("put", "Store an artifact under a name");
    put->add_option("name", name_, "Logical name")->required();
    put->add_option("file", file_, "Artifact file")->required();
    put->add_option("--kind", kind_, "version, match or diff (default: detected)")
        ->check(CLI::IsMember({"version", "match", "diff"}));
    put->add_flag("--force-new-entry", force_, "Add a newer entry for an existing name");
    put->callback([this] {
      action_ = [this] {
        Repository repo = Repository::open(repo_root_);
        std::string content = read_file(file_);
        std::string kind = kind_.empty() ? detect_artifact_kind(content) : kind_;
        RepoEntry e = repo.put(name_, kind, content, force_);
        out_ << e.name << '\t' << e.kind << '\t' << e.sha256 << '\t' << e.size << '\n';
        return kExitOk;
      };
    });

    auto* get = cmd->add_subcommand("get", "Retrieve an artifact");
    get->add_option("name", name_, "Logical name")->required();
    get->add_option("--out", out_file_, "Output file (default: standard output)");
    get->callback([this] {
      action_ = [this] {
        Repository repo = Repository::open(repo_root_);
        std::string content = repo.get(name_);
        if (out_file_.empty())
          out_ << content;
        else
          write_file(out_file_, content);
        return kExitOk;
      };
    });

    cmd->add_subcommand("list", "List stored artifacts")->callback([this] {
      action_ = [this] {
        Repository repo = Repository::open(repo_root_);
        out_ << "name\tkind\tsha256\tsize\n";
        for (const auto& e : repo.list())
          out_ << e.name << '\t' << e.kind << '\t' << e.sha256 << '\t' << e.size << '\n';
        return kExitOk;
      };
    });
  }

  void add_agg(CLI::App* cmd) {
    cmd->add_option("--agg", agg_, "Aggregation mode")
        ->check(CLI::IsMember({"literal", "fused"}))
        ->capture_default_str();
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<int()> action_ = [] { return kExitInput; };

  InputOptions input_;
  MatchOptions match_;
  std::string old_, new_, diff_, basic_in_, out_file_, basic_out_, agg_ = "fused";
  bool lenient_ = false;
  std::uint64_t seed_ = 0;
  std::size_t size_ = 0, edits_ = 0;
  std::string out_dir_;
  bool dirty_ = false;
  std::string repo_root_, name_, file_, kind_;
  bool force_ = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace evomap
