#include "hweyl/cache.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "hweyl/error.hpp"

namespace hweyl {

namespace {

template <typename Unsigned>
void put_le(std::ostream& out, Unsigned value) {
  std::array<char, sizeof(Unsigned)> bytes{};
  for (std::size_t i = 0; i < sizeof(Unsigned); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename Unsigned>
Unsigned get_le(std::istream& in) {
  std::array<unsigned char, sizeof(Unsigned)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw Error(ErrorKind::Io, "eigenvalue cache truncated");
  Unsigned value = 0;
  for (std::size_t i = 0; i < sizeof(Unsigned); ++i) {
    value |= static_cast<Unsigned>(bytes[i]) << (8 * i);
  }
  return value;
}

double read_header(std::istream& in, std::uint64_t& count) {
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) {
    throw Error(ErrorKind::Io, "not an eigenvalue cache (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCacheVersion) {
    throw Error(ErrorKind::Io, "unsupported cache version " + std::to_string(version));
  }
  const double limit = std::bit_cast<double>(get_le<std::uint64_t>(in));
  count = get_le<std::uint64_t>(in);
  return limit;
}

}  // namespace

void write_cache(std::ostream& out, const SpectrumCache& cache) {
  out.write(kCacheMagic, sizeof kCacheMagic);
  put_le<std::uint32_t>(out, kCacheVersion);
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(cache.limit));
  put_le<std::uint64_t>(out, cache.entries.size());
  for (const auto& e : cache.entries) {
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(e.branch));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(e.index_first));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(e.index_second));
    put_le<std::uint32_t>(out, e.multiplicity);
  }
  if (!out) throw Error(ErrorKind::Io, "failed writing eigenvalue cache");
}

SpectrumCache read_cache(std::istream& in) {
  std::uint64_t count = 0;
  SpectrumCache cache;
  cache.limit = read_header(in, count);
  if (!(cache.limit >= 0.0)) throw Error(ErrorKind::Io, "cache limit is negative or NaN");
  cache.entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    EigenvalueEntry e;
    const auto branch = get_le<std::uint8_t>(in);
    if (branch > 1) throw Error(ErrorKind::Io, "cache record has unknown branch tag");
    e.branch = static_cast<Branch>(branch);
    e.index_first = static_cast<std::int64_t>(get_le<std::uint64_t>(in));
    e.index_second = static_cast<std::int64_t>(get_le<std::uint64_t>(in));
    e.multiplicity = get_le<std::uint32_t>(in);
    if (e.index_first < 0 || e.index_second < 0 ||
        (e.branch == Branch::TypeII && e.index_first < 1)) {
      throw Error(ErrorKind::Io, "cache record has an invalid index");
    }
    e.value = e.branch == Branch::Torus ? torus_value(e.payload()) : typeII_value(e.payload());
    const std::uint64_t expected = e.branch == Branch::Torus
                                       ? r2(e.payload())
                                       : 2 * static_cast<std::uint64_t>(e.index_first);
    if (e.multiplicity != expected) throw Error(ErrorKind::Io, "cache record multiplicity mismatch");
    cache.entries.push_back(e);
  }
  return cache;
}

void write_cache_file(const std::filesystem::path& path, const SpectrumCache& cache) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create cache directory " + path.parent_path().string());
  }
  // Write beside the target and rename so readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    write_cache(out, cache);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot move cache into place at " + path.string());
}

SpectrumCache read_cache_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open cache " + path.string());
  return read_cache(in);
}

std::optional<double> peek_cache_limit(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    std::uint64_t count = 0;
    return read_header(in, count);
  } catch (const Error&) {
    return std::nullopt;
  }
}

SpectrumCache build_spectrum_cache(double limit, const EnumerationOptions& options) {
  SpectrumCache cache;
  cache.limit = limit;
  cache.entries = torus_eigenvalues(limit, options);
  auto type_ii = typeII_eigenvalues(limit, options);
  cache.entries.insert(cache.entries.end(), type_ii.begin(), type_ii.end());
  return cache;
}

JumpSequence load_or_build(const std::filesystem::path& path, double limit,
                           const EnumerationOptions& options) {
  if (const auto cached = peek_cache_limit(path); cached && *cached >= limit) {
    const auto cache = read_cache_file(path);
    return JumpSequence::from_entries(cache.limit, cache.entries);
  }
  const auto cache = build_spectrum_cache(limit, options);
  write_cache_file(path, cache);
  return JumpSequence::from_entries(cache.limit, cache.entries);
}

}  // namespace hweyl
