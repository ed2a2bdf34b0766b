#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "finite_group.hpp"
#include "io.hpp"
#include "subgroup.hpp"

namespace braceforge {

/// Bumped whenever enumeration output could change for a fixed table.
inline constexpr std::string_view kEngineVersion = "braceforge-1";

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hex key of the canonical Cayley table and the engine version.
inline std::string cache_key(const FiniteGroup& G) {
  std::string bytes(kEngineVersion);
  bytes += '|';
  bytes += std::to_string(G.order());
  bytes += '|';
  for (Elem e : G.table()) {
    bytes += static_cast<char>(e & 0xff);
    bytes += static_cast<char>(e >> 8);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

/// An explicit directory wins; otherwise BRACEFORGE_CACHE; otherwise none.
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("BRACEFORGE_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

class EnumerationCache {
 public:
  explicit EnumerationCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const FiniteGroup& G) const { return dir_ / (cache_key(G) + ".json"); }

  /// Cached subgroups for G, or nullopt when absent, stale or unreadable.
  std::optional<std::vector<PermSubgroup>> load(const GroupPtr& G) const {
    const auto path = path_for(*G);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
      const Json j = Json::parse(read_file(path.string()));
      if (j.at("engine").get<std::string>() != kEngineVersion) return std::nullopt;
      if (j.at("table").get<std::vector<std::vector<long long>>>() != table_rows(*G)) return std::nullopt;
      std::vector<PermSubgroup> out;
      for (const auto& s : j.at("subgroups")) out.push_back(subgroup_from_json(Json{{"elements", s}}, G));
      return out;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  /// Writes via a temporary file and rename so readers never see a partial entry.
  void store(const GroupPtr& G, const std::vector<PermSubgroup>& subgroups) const {
    std::filesystem::create_directories(dir_);
    Json subs = Json::array();
    for (const auto& N : subgroups) subs.push_back(subgroup_to_json(N).at("elements"));
    const Json j{{"engine", kEngineVersion}, {"table", table_rows(*G)}, {"subgroups", std::move(subs)}};
    const auto path = path_for(*G);
    auto tmp = path;
    tmp += ".tmp";
    write_file(tmp.string(), j.dump() + "\n");
    std::filesystem::rename(tmp, path);
  }

 private:
  std::filesystem::path dir_;
};

/// enumerate_regular_gstable through an optional cache. `hit` reports
/// whether the result came from the cache.
inline std::vector<PermSubgroup> cached_enumerate(const GroupPtr& G, const EnumerateOptions& options,
                                                  const std::optional<std::filesystem::path>& dir,
                                                  bool* hit = nullptr) {
  if (hit) *hit = false;
  if (!dir) return enumerate_regular_gstable(G, options);
  EnumerationCache cache(*dir);
  if (auto cached = cache.load(G)) {
    if (hit) *hit = true;
    return *cached;
  }
  auto result = enumerate_regular_gstable(G, options);
  cache.store(G, result);
  return result;
}

}  // namespace braceforge
