#include "hweyl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "hweyl/error.hpp"

namespace hweyl {

std::uint64_t EigenvalueEntry::payload() const {
  const auto a = static_cast<std::uint64_t>(index_first);
  const auto b = static_cast<std::uint64_t>(index_second);
  if (branch == Branch::Torus) return a * a + b * b;
  return a * (a + 2 * b + 1);
}

std::uint64_t r2(std::uint64_t n) {
  if (n == 0) return 1;
  while (n % 2 == 0) n /= 2;
  std::uint64_t product = 1;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p != 0) continue;
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (p % 4 == 1) {
      product *= e + 1;
    } else if (e % 2 == 1) {
      return 0;
    }
  }
  if (n > 1) {
    if (n % 4 == 1) {
      product *= 2;
    } else {
      return 0;
    }
  }
  return 4 * product;
}

namespace {

void require_limit(double limit) {
  if (!(limit >= 0.0) || !std::isfinite(limit)) {
    throw Error(ErrorKind::InvalidArgument, "spectral limit must be finite and >= 0");
  }
}

void require_budget(std::uint64_t count, const EnumerationOptions& options) {
  if (count > options.max_entries) {
    throw Error(ErrorKind::CutoffTooLarge,
                "enumeration would produce " + std::to_string(count) +
                    " entries, above the budget of " + std::to_string(options.max_entries));
  }
}

std::uint64_t type_ii_k_max(std::uint64_t cutoff, std::uint64_t c) {
  return (cutoff / c - c - 1) / 2;
}

}  // namespace

std::uint64_t torus_cutoff(double limit) {
  require_limit(limit);
  auto n = static_cast<std::uint64_t>(std::floor(limit / kFourPiSquared));
  while (torus_value(n + 1) <= limit) ++n;
  while (n > 0 && torus_value(n) > limit) --n;
  return n;
}

std::uint64_t typeII_cutoff(double limit) {
  require_limit(limit);
  auto n = static_cast<std::uint64_t>(std::floor(limit / kTwoPi));
  while (typeII_value(n + 1) <= limit) ++n;
  while (n > 0 && typeII_value(n) > limit) --n;
  return n;
}

std::vector<EigenvalueEntry> torus_eigenvalues(double limit, const EnumerationOptions& options) {
  const std::uint64_t cutoff = torus_cutoff(limit);
  require_budget(cutoff + 1, options);

  std::vector<std::uint32_t> multiplicity(cutoff + 1, 0);
  std::vector<std::int64_t> first(cutoff + 1, -1);
  std::vector<std::int64_t> second(cutoff + 1, -1);
  for (std::uint64_t a = 0; a * a <= cutoff; ++a) {
    for (std::uint64_t b = 0; b <= a && a * a + b * b <= cutoff; ++b) {
      const std::uint64_t n = a * a + b * b;
      const std::uint32_t orbit = a == 0 ? 1 : (b == 0 || b == a) ? 4 : 8;
      multiplicity[n] += orbit;
      if (first[n] < 0) {
        first[n] = static_cast<std::int64_t>(a);
        second[n] = static_cast<std::int64_t>(b);
      }
    }
  }

  std::vector<EigenvalueEntry> entries;
  for (std::uint64_t n = 0; n <= cutoff; ++n) {
    if (multiplicity[n] == 0) continue;
    entries.push_back({torus_value(n), multiplicity[n], Branch::Torus, first[n], second[n]});
  }
  return entries;
}

std::vector<EigenvalueEntry> typeII_eigenvalues(double limit, const EnumerationOptions& options) {
  const std::uint64_t cutoff = typeII_cutoff(limit);

  // Row c holds k = 0..k_max(c); offsets let each worker fill its own rows.
  std::vector<std::uint64_t> offsets{0};
  for (std::uint64_t c = 1; c * (c + 1) <= cutoff; ++c) {
    offsets.push_back(offsets.back() + type_ii_k_max(cutoff, c) + 1);
  }
  const std::uint64_t total = offsets.back();
  require_budget(total, options);
  const std::uint64_t rows = offsets.size() - 1;

  std::vector<EigenvalueEntry> entries(total);
  auto fill_rows = [&](std::uint64_t row_begin, std::uint64_t row_end) {
    for (std::uint64_t row = row_begin; row < row_end; ++row) {
      const std::uint64_t c = row + 1;
      const std::uint64_t k_max = type_ii_k_max(cutoff, c);
      auto* out = entries.data() + offsets[row];
      for (std::uint64_t k = 0; k <= k_max; ++k) {
        out[k] = {typeII_value(c * (c + 2 * k + 1)), static_cast<std::uint32_t>(2 * c),
                  Branch::TypeII, static_cast<std::int64_t>(c), static_cast<std::int64_t>(k)};
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(rows)));
  if (workers <= 1) {
    fill_rows(0, rows);
  } else {
    // Contiguous row blocks holding roughly total / workers entries each.
    std::vector<std::jthread> pool;
    std::uint64_t row = 0;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t target = total * (w + 1) / workers;
      std::uint64_t end = w + 1 == workers
                              ? rows
                              : static_cast<std::uint64_t>(
                                    std::lower_bound(offsets.begin(), offsets.end(), target) -
                                    offsets.begin());
      end = std::clamp(end, row, rows);
      if (end > row) pool.emplace_back(fill_rows, row, end);
      row = end;
    }
  }

  std::sort(entries.begin(), entries.end(), [](const EigenvalueEntry& x, const EigenvalueEntry& y) {
    const auto px = x.payload();
    const auto py = y.payload();
    if (px != py) return px < py;
    return x.index_first < y.index_first;
  });
  return entries;
}

JumpSequence JumpSequence::from_entries(double limit, std::span<const EigenvalueEntry> entries) {
  require_limit(limit);
  struct Line {
    std::uint64_t payload;
    std::uint64_t multiplicity;
  };
  std::vector<Line> torus;
  std::vector<Line> type_ii;
  for (const auto& e : entries) {
    if (e.value > limit) continue;
    (e.branch == Branch::Torus ? torus : type_ii).push_back({e.payload(), e.multiplicity});
  }
  auto by_payload = [](const Line& x, const Line& y) { return x.payload < y.payload; };
  std::sort(torus.begin(), torus.end(), by_payload);
  std::sort(type_ii.begin(), type_ii.end(), by_payload);
  if (torus.empty() || torus.front().payload != 0) {
    throw Error(ErrorKind::InvalidArgument, "jump sequence needs the zero eigenvalue");
  }

  JumpSequence seq;
  seq.limit_ = limit;
  std::uint64_t total = 0;
  std::uint64_t torus_total = 0;
  auto push = [&](double value, std::uint64_t torus_mult, std::uint64_t type_ii_mult) {
    total += torus_mult + type_ii_mult;
    torus_total += torus_mult;
    if (!seq.jumps_.empty() && seq.jumps_.back() == value) {
      // Same-branch duplicates are merged before we get here, and π is
      // irrational, so a torus value can only meet a type-II value at 0.
      throw std::logic_error("cross-branch eigenvalue collision");
    }
    seq.jumps_.push_back(value);
    seq.cumulative_.push_back(total);
    seq.cumulative_torus_.push_back(torus_total);
  };

  std::size_t i = 0;
  std::size_t j = 0;
  while (i < torus.size() || j < type_ii.size()) {
    const bool take_torus =
        j == type_ii.size() ||
        (i < torus.size() && torus_value(torus[i].payload) < typeII_value(type_ii[j].payload));
    if (take_torus) {
      std::uint64_t mult = torus[i].multiplicity;
      const std::uint64_t payload = torus[i++].payload;
      while (i < torus.size() && torus[i].payload == payload) mult += torus[i++].multiplicity;
      push(torus_value(payload), mult, 0);
    } else {
      std::uint64_t mult = type_ii[j].multiplicity;
      const std::uint64_t payload = type_ii[j++].payload;
      while (j < type_ii.size() && type_ii[j].payload == payload) mult += type_ii[j++].multiplicity;
      push(typeII_value(payload), 0, mult);
    }
  }
  return seq;
}

void JumpSequence::check_range(double s) const {
  if (!(s >= 0.0 && s <= limit_)) {
    throw Error(ErrorKind::OutOfRange, "argument " + std::to_string(s) +
                                           " outside the enumerated range [0, " +
                                           std::to_string(limit_) + "]");
  }
}

std::size_t JumpSequence::index_at(double s) const {
  check_range(s);
  const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), s);
  return static_cast<std::size_t>(it - jumps_.begin()) - 1;
}

std::uint64_t JumpSequence::count_total(double s) const { return cumulative_[index_at(s)]; }

std::uint64_t JumpSequence::count_torus(double s) const { return cumulative_torus_[index_at(s)]; }

std::uint64_t JumpSequence::count_typeII(double s) const {
  const std::size_t i = index_at(s);
  return cumulative_[i] - cumulative_torus_[i];
}

JumpSequence merged_jump_sequence(double limit, const EnumerationOptions& options) {
  auto entries = torus_eigenvalues(limit, options);
  auto type_ii = typeII_eigenvalues(limit, options);
  entries.insert(entries.end(), type_ii.begin(), type_ii.end());
  return JumpSequence::from_entries(limit, entries);
}

JumpSequence torus_jump_sequence(double limit, const EnumerationOptions& options) {
  return JumpSequence::from_entries(limit, torus_eigenvalues(limit, options));
}

}  // namespace hweyl
