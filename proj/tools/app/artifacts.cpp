#include "app/artifacts.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include "app/config.hpp"

namespace chainctl::cli {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp =
      path.parent_path() / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void ArtifactSet::add(std::string name, std::string content) {
  entries_.push_back({std::move(name), std::move(content)});
}

std::vector<std::string> ArtifactSet::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

void ArtifactSet::commit(std::string_view provenance) const {
  std::filesystem::create_directories(dir_);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& e : entries_) {
    write_atomic(dir_ / e.name, e.content);
    files.push_back({{"file", e.name}, {"sha256", sha256_hex(e.content)}, {"bytes", e.content.size()}});
  }
  const nlohmann::json manifest = {{"provenance", nlohmann::json::parse(provenance)},
                                   {"artifacts", std::move(files)}};
  write_atomic(dir_ / "manifest.json", manifest.dump(1) + "\n");
}

}  // namespace chainctl::cli
