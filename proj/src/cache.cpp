#include "jetdiff/cache.hpp"

#include <zlib.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jetdiff/error.hpp"

namespace jetdiff {

std::uint32_t payload_checksum(const std::string& payload) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
  return static_cast<std::uint32_t>(crc);
}

CacheEntry make_cache_entry(std::string family, std::string engine_version, std::string payload) {
  CacheEntry e{std::move(family), std::move(engine_version), std::move(payload), 0};
  e.checksum = payload_checksum(e.payload);
  return e;
}

namespace {

std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(8);
  os.fill('0');
  os << v;
  return os.str();
}

std::optional<CacheEntry> parse_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto tab = line.find('\t', pos);
    if (tab == std::string::npos) return std::nullopt;
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  CacheEntry e;
  e.family = fields[0];
  e.engine_version = fields[1];
  e.payload = line.substr(pos);
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(fields[2], &used, 16);
    if (used != fields[2].size() || fields[2].size() != 8) return std::nullopt;
    e.checksum = static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return e;
}

}  // namespace

std::vector<ChiCache::Line> ChiCache::read_lines(bool* header_ok) const {
  std::vector<Line> out;
  *header_ok = false;
  std::ifstream in(path_, std::ios::binary);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) return out;
  *header_ok = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto e = parse_line(line);
    if (!e) {
      out.push_back({CacheEntry{"?", "?", line, 0}, false});
      continue;
    }
    const bool valid = payload_checksum(e->payload) == e->checksum;
    out.push_back({std::move(*e), valid});
  }
  return out;
}

std::optional<std::string> ChiCache::load(const std::string& family, const std::string& engine_version,
                                          LoadOutcome* outcome) const {
  auto set = [&](LoadOutcome o) {
    if (outcome) *outcome = o;
  };
  if (!std::filesystem::exists(path_)) {
    set(LoadOutcome::Missing);
    return std::nullopt;
  }
  bool header_ok = false;
  const auto lines = read_lines(&header_ok);
  if (!header_ok) {
    set(LoadOutcome::Corrupt);
    return std::nullopt;
  }
  bool stale = false;
  for (const auto& l : lines) {
    if (l.entry.family != family) continue;
    if (l.entry.engine_version != engine_version) {
      stale = true;
      continue;
    }
    if (!l.valid) {
      set(LoadOutcome::Corrupt);
      return std::nullopt;
    }
    set(LoadOutcome::Hit);
    return l.entry.payload;
  }
  set(stale ? LoadOutcome::Stale : LoadOutcome::Missing);
  return std::nullopt;
}

void ChiCache::store(const CacheEntry& entry) const {
  if (entry.payload.find('\n') != std::string::npos)
    raise(ErrorKind::InvalidArgument, "cache payload must be a single line");
  bool header_ok = false;
  auto lines = std::filesystem::exists(path_) ? read_lines(&header_ok) : std::vector<Line>{};
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);

  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::IoFailure, "cannot write cache file " + tmp);
    out << kCacheHeader << '\n';
    for (const auto& l : lines) {
      if (!l.valid || l.entry.family == entry.family) continue;
      out << l.entry.family << '\t' << l.entry.engine_version << '\t' << hex32(l.entry.checksum) << '\t'
          << l.entry.payload << '\n';
    }
    out << entry.family << '\t' << entry.engine_version << '\t' << hex32(entry.checksum) << '\t' << entry.payload
        << '\n';
    if (!out.flush()) raise(ErrorKind::IoFailure, "cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, path_, ec);
  if (ec) raise(ErrorKind::IoFailure, "cannot replace cache file: " + ec.message());
}

Json ChiCache::inspect() const {
  Json out{{"path", path_.string()}, {"exists", std::filesystem::exists(path_)}};
  bool header_ok = false;
  const auto lines = read_lines(&header_ok);
  out["header_ok"] = header_ok;
  Json entries = Json::array();
  for (const auto& l : lines)
    entries.push_back({{"family", l.entry.family},
                       {"engine_version", l.entry.engine_version},
                       {"checksum", hex32(l.entry.checksum)},
                       {"payload_bytes", l.entry.payload.size()},
                       {"valid", l.valid}});
  out["entries"] = std::move(entries);
  return out;
}

bool ChiCache::clear() const {
  std::error_code ec;
  return std::filesystem::remove(path_, ec);
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("JETDIFF_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "jetdiff" / "chi.cache";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "jetdiff" / "chi.cache";
  return std::filesystem::path("jetdiff-chi.cache");
}

}  // namespace jetdiff
