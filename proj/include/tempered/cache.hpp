#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tempered {

std::string sha256_hex(std::string_view data);

/// Content-addressed store of text payloads. Each entry carries the SHA-256 of its key and
/// payload; an entry that fails the check is reported as CacheCorrupted by load() and
/// recomputed by get_or_compute().
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  /// $TEMPERED_CACHE_DIR, else $XDG_CACHE_HOME/tempered, else ~/.cache/tempered.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const;

  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& payload) const;
  std::string get_or_compute(const std::string& key, const std::function<std::string()>& compute);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t corrupted() const { return corrupted_; }

 private:
  std::filesystem::path dir_;
  std::size_t hits_ = 0, misses_ = 0, corrupted_ = 0;
};

}  // namespace tempered
