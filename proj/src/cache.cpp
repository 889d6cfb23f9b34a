#include "tempered/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "tempered/error.hpp"

namespace tempered {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "tempered-cache v1";

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::default_dir() {
  if (const char* d = std::getenv("TEMPERED_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "tempered";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "tempered";
  return fs::temp_directory_path() / "tempered-cache";
}

fs::path Cache::entry_path(const std::string& key) const { return dir_ / (sha256_hex(key) + ".entry"); }

std::optional<std::string> Cache::load(const std::string& key) const {
  const fs::path p = entry_path(key);
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header, payload;
  std::getline(in, header);
  payload.assign(std::istreambuf_iterator<char>(in), {});
  std::istringstream h(header);
  std::string magic1, magic2, key_hash, payload_hash;
  h >> magic1 >> magic2 >> key_hash >> payload_hash;
  if (magic1 + " " + magic2 != kMagic || key_hash != sha256_hex(key) || payload_hash != sha256_hex(payload))
    throw Error(ErrorCode::CacheCorrupted, p.string());
  return payload;
}

void Cache::store(const std::string& key, const std::string& payload) const {
  fs::create_directories(dir_);
  const fs::path p = entry_path(key);
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kMagic << ' ' << sha256_hex(key) << ' ' << sha256_hex(payload) << '\n' << payload;
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::string Cache::get_or_compute(const std::string& key, const std::function<std::string()>& compute) {
  try {
    if (auto hit = load(key)) {
      ++hits_;
      return *hit;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CacheCorrupted) throw;
    ++corrupted_;
  }
  ++misses_;
  std::string payload = compute();
  store(key, payload);
  return payload;
}

}  // namespace tempered
