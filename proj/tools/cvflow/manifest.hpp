#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace cvflow::cli {

/// Lowercase hex SHA-1 of "blob <size>\0<content>", the object id git assigns to `content`.
std::string git_blob_hash(const std::string& content);

/// Record of one invocation. `inputs` holds every resolved parameter and the
/// initial-data text; its canonical dump is what content_hash covers, so two
/// runs with equal hashes compute the same thing.
struct RunManifest {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::array();

  std::string content_hash() const;
  void add_output(const std::filesystem::path& path);
  /// Writes <dir>/manifest.json with a UTC start stamp, creating `dir` if needed.
  void write(const std::filesystem::path& dir) const;
};

/// Writes `doc` to <dir>/summary.json.
void write_summary(const std::filesystem::path& dir, const nlohmann::json& doc);

}  // namespace cvflow::cli
