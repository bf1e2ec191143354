#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rfk {

/// Incremental SHA-256 producing lowercase hex.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::span<const std::uint8_t> bytes);
  void update(std::string_view text);
  /// 64 hex characters. The hasher must not be used afterwards.
  std::string hex_digest();

 private:
  void* ctx_;
};

std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// Digest over a set of files: for each (label, path) in the given order,
/// hashes label, a NUL byte, the file size as decimal, a NUL byte, then the
/// file bytes.
std::string digest_files(const std::vector<std::pair<std::string, std::filesystem::path>>& files);

}  // namespace rfk
