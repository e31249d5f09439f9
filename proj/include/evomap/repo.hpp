#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evomap {

struct RepoEntry {
  std::string name;
  /// "version", "match" or "diff".
  std::string kind;
  std::string sha256;
  std::uintmax_t size = 0;
  /// Relative to the repository root.
  std::string path;
};

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Guesses the artifact kind from its first line; "version" when unsure.
std::string detect_artifact_kind(std::string_view content);

/// $EVOMAP_REPO when set, else ".evomap".
std::filesystem::path default_repo_root();

/// File-based working repository: versions/, matches/ and diffs/ hold
/// content-addressed artifacts, `index.tsv` maps logical names to them.
/// Index updates take an exclusive advisory lock on `index.lock`.
class Repository {
 public:
  /// Creates the layout; an existing repository is left untouched.
  static Repository init(const std::filesystem::path& root);
  /// Throws RepoError when `root` is not an initialized repository.
  static Repository open(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Stores `content` under `name`. A name already in the index is an error
  /// unless `force_new_entry`, in which case a newer entry shadows it.
  RepoEntry put(const std::string& name, const std::string& kind, std::string_view content,
                bool force_new_entry = false);

  /// Content of the newest entry called `name`. Throws RepoError when the
  /// name is unknown or the stored bytes no longer match the recorded hash.
  std::string get(const std::string& name) const;

  std::optional<RepoEntry> find(const std::string& name) const;
  std::vector<RepoEntry> list() const;

 private:
  explicit Repository(std::filesystem::path root) : root_(std::move(root)) {}
  std::vector<RepoEntry> read_index() const;

  std::filesystem::path root_;
};

}  // namespace evomap
