#include "evomap/repo.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evomap/error.hpp"
#include "evomap/io.hpp"

namespace evomap {

namespace fs = std::filesystem;

namespace {

constexpr const char* kIndexHeader = "#name\tkind\tsha256\tsize\tpath";

class IndexLock {
 public:
  IndexLock(const fs::path& root, bool exclusive) {
    fd_ = ::open((root / "index.lock").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw RepoError("cannot open lock file in " + root.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw RepoError("cannot lock repository " + root.string());
    }
  }
  ~IndexLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  IndexLock(const IndexLock&) = delete;
  IndexLock& operator=(const IndexLock&) = delete;

 private:
  int fd_ = -1;
};

std::string kind_dir(const std::string& kind) {
  if (kind == "version") return "versions";
  if (kind == "match") return "matches";
  if (kind == "diff") return "diffs";
  throw RepoError("unknown artifact kind '" + kind + "'");
}

std::string extension(const std::string& kind) {
  if (kind == "version") return ".ont";
  if (kind == "match") return ".tsv";
  return ".dif";
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw RepoError("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string detect_artifact_kind(std::string_view content) {
  if (content.rfind("#evomap-diff", 0) == 0) return "diff";
  std::string_view first = content.substr(0, content.find('\n'));
  if (first.find("[concepts]") != std::string_view::npos || first.rfind("# version", 0) == 0)
    return "version";
  if (first.find('\t') != std::string_view::npos) return "match";
  return "version";
}

fs::path default_repo_root() {
  if (const char* env = std::getenv("EVOMAP_REPO"); env && *env) return env;
  return ".evomap";
}

Repository Repository::init(const fs::path& root) {
  std::error_code ec;
  for (const char* dir : {"versions", "matches", "diffs"}) {
    fs::create_directories(root / dir, ec);
    if (ec) throw RepoError("cannot create " + (root / dir).string() + ": " + ec.message());
  }
  Repository r(root);
  IndexLock lock(root, true);
  if (!fs::exists(root / "index.tsv")) write_file((root / "index.tsv").string(), std::string(kIndexHeader) + "\n");
  return r;
}

Repository Repository::open(const fs::path& root) {
  if (!fs::is_regular_file(root / "index.tsv"))
    throw RepoError("not a repository: " + root.string() + " (run 'repo init')");
  return Repository(root);
}

std::vector<RepoEntry> Repository::read_index() const {
  std::ifstream in(root_ / "index.tsv", std::ios::binary);
  if (!in) throw RepoError("cannot read index of " + root_.string());
  std::vector<RepoEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    RepoEntry e;
    std::string size;
    if (!std::getline(fields, e.name, '\t') || !std::getline(fields, e.kind, '\t') ||
        !std::getline(fields, e.sha256, '\t') || !std::getline(fields, size, '\t') ||
        !std::getline(fields, e.path))
      throw RepoError("corrupt index line " + std::to_string(lineno));
    e.size = std::stoull(size);
    entries.push_back(std::move(e));
  }
  return entries;
}

RepoEntry Repository::put(const std::string& name, const std::string& kind, std::string_view content,
                          bool force_new_entry) {
  if (name.empty() || name.find_first_of("\t\n\r") != std::string::npos || name[0] == '#')
    throw RepoError("invalid artifact name '" + name + "'");
  RepoEntry e;
  e.name = name;
  e.kind = kind;
  e.sha256 = sha256_hex(content);
  e.size = content.size();
  e.path = kind_dir(kind) + "/" + e.sha256 + extension(kind);

  IndexLock lock(root_, true);
  for (const auto& existing : read_index())
    if (existing.name == name && !force_new_entry)
      throw RepoError("artifact '" + name + "' already exists (use --force-new-entry)");

  fs::path target = root_ / e.path;
  if (!fs::exists(target)) {
    fs::path tmp = target;
    tmp += ".tmp";
    write_file(tmp.string(), content);
    fs::rename(tmp, target);
  }

  std::ofstream out(root_ / "index.tsv", std::ios::binary | std::ios::app);
  out << e.name << '\t' << e.kind << '\t' << e.sha256 << '\t' << e.size << '\t' << e.path << '\n';
  if (!out.flush()) throw RepoError("cannot update index of " + root_.string());
  return e;
}

std::optional<RepoEntry> Repository::find(const std::string& name) const {
  IndexLock lock(root_, false);
  std::optional<RepoEntry> found;
  for (auto& e : read_index())
    if (e.name == name) found = std::move(e);
  return found;
}

std::string Repository::get(const std::string& name) const {
  auto e = find(name);
  if (!e) throw RepoError("unknown artifact '" + name + "'");
  std::string content;
  try {
    content = read_file((root_ / e->path).string());
  } catch (const Error&) {
    throw RepoError("artifact '" + name + "' is missing its file " + e->path);
  }
  if (sha256_hex(content) != e->sha256)
    throw RepoError("corrupted artifact '" + name + "': hash mismatch for " + e->path);
  return content;
}

std::vector<RepoEntry> Repository::list() const {
  IndexLock lock(root_, false);
  return read_index();
}

}  // namespace evomap
