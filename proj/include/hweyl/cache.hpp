#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hweyl/spectrum.hpp"

namespace hweyl {

/// Binary eigenvalue cache, little-endian throughout:
///
///   "HWEYL001" | version u32 | limit f64 | entry count u64
///   then per entry: branch u8 | index i64 | index i64 | multiplicity u32
///
/// Values are not stored; they are recomputed from the integer index on load.
inline constexpr char kCacheMagic[8] = {'H', 'W', 'E', 'Y', 'L', '0', '0', '1'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderBytes = 8 + 4 + 8 + 8;
inline constexpr std::size_t kCacheRecordBytes = 1 + 8 + 8 + 4;

struct SpectrumCache {
  double limit = 0.0;
  std::vector<EigenvalueEntry> entries;
};

void write_cache(std::ostream& out, const SpectrumCache& cache);
SpectrumCache read_cache(std::istream& in);

void write_cache_file(const std::filesystem::path& path, const SpectrumCache& cache);
SpectrumCache read_cache_file(const std::filesystem::path& path);

/// Reads only the header; nullopt when the file is missing or not a cache.
std::optional<double> peek_cache_limit(const std::filesystem::path& path);

/// Torus and type-II entries up to `limit`, in that order.
SpectrumCache build_spectrum_cache(double limit, const EnumerationOptions& options = {});

/// Loads `path` when it covers `limit`, otherwise enumerates and rewrites it.
/// The returned sequence uses the cache's own limit, which may exceed `limit`.
JumpSequence load_or_build(const std::filesystem::path& path, double limit,
                           const EnumerationOptions& options = {});

}  // namespace hweyl
