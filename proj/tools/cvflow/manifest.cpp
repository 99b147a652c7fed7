#include "manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace cvflow::cli {

std::string git_blob_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), blob.data(), blob.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("manifest: SHA-1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string RunManifest::content_hash() const {
  const nlohmann::json canonical = {{"command", command}, {"inputs", inputs}};
  return git_blob_hash(canonical.dump());
}

void RunManifest::add_output(const std::filesystem::path& path) { outputs.push_back(path.filename().string()); }

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << doc.dump(2) << '\n';
}

}  // namespace

void RunManifest::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const nlohmann::json doc = {{"command", command},
                              {"inputs", inputs},
                              {"outputs", outputs},
                              {"content_hash", content_hash()},
                              {"started_utc", utc_now()}};
  write_json(dir / "manifest.json", doc);
}

void write_summary(const std::filesystem::path& dir, const nlohmann::json& doc) {
  std::filesystem::create_directories(dir);
  write_json(dir / "summary.json", doc);
}

}  // namespace cvflow::cli
