#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chainctl::cli {

std::string sha256_hex(std::string_view data);

/// Files produced by one command. Nothing touches the disk until commit(),
/// which writes each file atomically (temporary file, then rename) followed
/// by manifest.json listing every artifact with its SHA-256.
class ArtifactSet {
 public:
  explicit ArtifactSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(std::string name, std::string content);
  /// `provenance` is a JSON object text embedded in the manifest.
  void commit(std::string_view provenance) const;

  const std::filesystem::path& dir() const { return dir_; }
  std::vector<std::string> names() const;

 private:
  struct Entry {
    std::string name;
    std::string content;
  };
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace chainctl::cli
