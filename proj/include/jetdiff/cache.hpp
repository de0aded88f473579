#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jetdiff/serialize.hpp"

namespace jetdiff {

inline constexpr std::string_view kCacheHeader = "jetdiff-cache-v1";

/// One line per entry: family, engine version, crc32 of the payload, payload.
struct CacheEntry {
  std::string family;
  std::string engine_version;
  std::string payload;
  std::uint32_t checksum = 0;
};

std::uint32_t payload_checksum(const std::string& payload);
CacheEntry make_cache_entry(std::string family, std::string engine_version, std::string payload);

enum class LoadOutcome { Hit, Missing, Corrupt, Stale };

class ChiCache {
 public:
  explicit ChiCache(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }

  /// Payload for (family, engine_version) if present and intact.
  std::optional<std::string> load(const std::string& family, const std::string& engine_version,
                                  LoadOutcome* outcome = nullptr) const;
  /// Replaces any entry with the same key. IoFailure when the file cannot be written.
  void store(const CacheEntry& entry) const;
  /// Entries as found on disk, each flagged valid or not.
  Json inspect() const;
  /// Removes the file; returns whether one existed.
  bool clear() const;

 private:
  struct Line {
    CacheEntry entry;
    bool valid;
  };
  std::vector<Line> read_lines(bool* header_ok) const;

  std::filesystem::path path_;
};

/// JETDIFF_CACHE if set, else $XDG_CACHE_HOME/jetdiff/chi.cache, else
/// $HOME/.cache/jetdiff/chi.cache.
std::filesystem::path default_cache_path();

}  // namespace jetdiff
