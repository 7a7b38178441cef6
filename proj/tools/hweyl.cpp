// Command-line front end.
//
// Exit status: 0 ok, 1 numerical failure, 2 invalid configuration,
// 3 verification failed, 4 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hweyl/cache.hpp"
#include "hweyl/constants.hpp"
#include "hweyl/counting.hpp"
#include "hweyl/error.hpp"
#include "hweyl/expsum.hpp"
#include "hweyl/format.hpp"
#include "hweyl/mollifier.hpp"
#include "hweyl/moments.hpp"
#include "hweyl/spectrum.hpp"
#include "oracles.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace hweyl;

namespace {

enum Exit { kOk = 0, kFailure = 1, kInvalid = 2, kVerifyFailed = 3, kIo = 4 };

struct Common {
  std::string cache;
  bool no_cache = false;
  std::string format = "json";
  std::string threads = "1";
  std::uint64_t seed = 1;
};

struct GridSpec {
  double start = 0.0;
  double ratio = 0.0;
  std::size_t count = 0;
};

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 3) {
    throw Error(ErrorKind::InvalidArgument, "grid must be start:ratio:count, got '" + text + "'");
  }
  try {
    GridSpec g;
    std::size_t used = 0;
    g.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.ratio = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    const double count = std::stod(parts[2], &used);
    if (used != parts[2].size() || count < 1 || count != std::floor(count)) {
      throw std::invalid_argument(parts[2]);
    }
    g.count = static_cast<std::size_t>(count);
    return g;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse grid '" + text + "'");
  }
}

unsigned thread_count(const Common& common) {
  if (common.threads == "auto") return std::max(1u, std::thread::hardware_concurrency());
  try {
    const int n = std::stoi(common.threads);
    if (n >= 1) return static_cast<unsigned>(n);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::InvalidArgument, "--threads must be a positive integer or 'auto'");
}

void check_format(const Common& common) {
  if (common.format != "json" && common.format != "csv") {
    throw Error(ErrorKind::InvalidArgument, "--format must be csv or json");
  }
}

std::uint64_t as_count(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a positive integer");
  }
  return static_cast<std::uint64_t>(v);
}

fs::path cache_path(const Common& common) {
  if (!common.cache.empty()) return common.cache;
  const char* dir = std::getenv("HWEYL_CACHE_DIR");
  return fs::path(dir != nullptr && *dir != '\0' ? dir : ".hweyl-cache") / "spectrum.bin";
}

JumpSequence load_spectrum(double limit, const Common& common) {
  EnumerationOptions options;
  options.threads = thread_count(common);
  if (common.no_cache) return merged_jump_sequence(limit, options);
  const auto path = cache_path(common);
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create cache directory " + path.parent_path().string());
  return load_or_build(path, limit, options);
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// spectrum ------------------------------------------------------------------

int run_spectrum(double limit, const Common& common) {
  if (!(limit >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--limit must be >= 0");
  const auto seq = load_spectrum(limit, common);
  const auto last = seq.index_at(limit);
  if (common.format == "csv") {
    std::cout << "value,count\n";
    for (std::size_t i = 0; i <= last; ++i) {
      std::cout << format_real(seq.jumps()[i]) << ',' << seq.cumulative()[i] << '\n';
    }
    return kOk;
  }
  emit({{"command", "spectrum"},
        {"limit", limit},
        {"distinct_eigenvalues", last + 1},
        {"count_total", seq.count_total(limit)},
        {"count_torus", seq.count_torus(limit)},
        {"count_typeII", seq.count_typeII(limit)}});
  return kOk;
}

// remainder -----------------------------------------------------------------

int run_remainder(const std::string& grid_text, const Common& common) {
  const auto g = parse_grid(grid_text);
  const auto grid = geometric_grid(g.start, g.ratio, g.count);
  const auto seq = load_spectrum(grid.back(), common);
  std::vector<RemainderSample> rows;
  for (double s : grid) rows.push_back(remainder(s, seq));
  if (common.format == "csv") {
    write_remainder_csv(std::cout, rows);
    return kOk;
  }
  json samples = json::array();
  for (const auto& r : rows) {
    samples.push_back({{"s", r.s}, {"count", r.count}, {"main", r.main}, {"remainder", r.remainder}});
  }
  emit({{"command", "remainder"}, {"samples", samples}});
  return kOk;
}

// moments -------------------------------------------------------------------

int run_moments(int k, const std::string& grid_text, bool torus, const Common& common) {
  if (k < 1 || k > 3) throw Error(ErrorKind::InvalidArgument, "--k must be 1, 2 or 3");
  const auto g = parse_grid(grid_text);
  const auto grid = geometric_grid(g.start, g.ratio, g.count);
  std::vector<MomentResult> curve;
  if (torus) {
    EnumerationOptions options;
    options.threads = thread_count(common);
    curve = torus_moment_curve(grid, k, torus_jump_sequence(grid.back(), options));
  } else {
    curve = moment_curve(grid, k, load_spectrum(grid.back(), common));
  }
  if (common.format == "csv") {
    std::cout << "T,k,value\n";
    for (const auto& r : curve) std::cout << format_real(r.T) << ',' << k << ',' << format_real(r.value) << '\n';
    return kOk;
  }
  json points = json::array();
  for (const auto& r : curve) {
    points.push_back({{"T", r.T}, {"value", r.value}, {"interval_count", r.interval_count}});
  }
  json fit = nullptr;
  json fit_error = nullptr;
  try {
    const auto f = fit_power_law(curve);
    fit = {{"exponent", f.exponent},
           {"coefficient", f.coefficient},
           {"residual_rms", f.residual_rms},
           {"points_used", f.points_used}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonpositiveValue && e.kind() != ErrorKind::InvalidArgument) throw;
    fit_error = e.what();
  }
  emit({{"command", "moments"},
        {"branch", torus ? "torus" : "full"},
        {"k", k},
        {"grid", points},
        {"fit", fit},
        {"fit_error", fit_error}});
  return kOk;
}

// expsum --------------------------------------------------------------------

int run_expsum(double T, double gamma, double alpha, double samples, const Common& common) {
  if (!(gamma > 0.75) || gamma > 1.0) throw Error(ErrorKind::InvalidArgument, "--gamma must lie in (3/4, 1]");
  const auto config = ExpSumConfig::make(T, gamma, alpha);
  const auto n = as_count(samples, "--samples");
  const auto& base = BumpProfile::standard();
  const auto terms = build_terms(config, base.scaled(config.epsilon));
  const auto seq = load_spectrum(kTwoPi * T, common);
  const auto report = meansquare_gap(config, terms, seq, base, n, common.seed);
  if (common.format == "csv") {
    write_gap_csv(std::cout, report.samples);
    return kOk;
  }
  emit({{"command", "expsum"},
        {"T", T},
        {"gamma", gamma},
        {"alpha", alpha},
        {"epsilon", config.epsilon},
        {"terms", terms.size()},
        {"seed", report.seed},
        {"samples", report.sample_count},
        {"residual_rms", report.residual_rms},
        {"gap_rms", report.gap_rms},
        {"normalized_residual_rms", report.normalized_residual_rms},
        {"max_normalized_residual", report.max_normalized_residual}});
  return kOk;
}

// constants -----------------------------------------------------------------

int run_constants(double b3_limit, double c2_nmax, const Common& common) {
  const auto limit = as_count(b3_limit, "--b3-limit");
  const auto nmax = as_count(c2_nmax, "--c2-nmax");
  const auto b3 = b3_estimate(limit);
  const double d3 = d3_from_b3(b3);
  const double c2 = c2_partial(nmax);
  if (common.format == "csv") {
    std::cout << "quantity,value\n"
              << "b3," << format_real(b3.partial) << '\n';
    for (int i = 0; i < 4; ++i) {
      std::cout << "b3_sum" << i + 1 << ',' << format_real(b3.per_sum_partials[i]) << '\n';
    }
    std::cout << "b3_tail_estimate," << format_real(b3.tail_estimate) << '\n'
              << "d3," << format_real(d3) << '\n'
              << "c2," << format_real(c2) << '\n';
    return kOk;
  }
  emit({{"limit", limit},
        {"b3",
         {{"partial", b3.partial},
          {"per_sum", b3.per_sum_partials},
          {"tail_estimate", b3.tail_estimate},
          {"terms", b3.term_count}}},
        {"d3", d3},
        {"c2", {{"n_max", nmax}, {"partial", c2}}}});
  return kOk;
}

// verify --------------------------------------------------------------------

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

int run_verify(double limit, const Common& common) {
  if (!(limit >= 100.0) || limit > 1e7) {
    throw Error(ErrorKind::InvalidArgument, "verify needs 100 <= --limit <= 1e7");
  }
  const auto seq = load_spectrum(limit, common);
  std::vector<Check> checks;

  {
    std::size_t bad = 0;
    const auto top = static_cast<int>(std::min(limit, 1e4));
    for (int s = 0; s <= top; ++s) {
      if (seq.count_total(s) != oracle::total_count(s)) ++bad;
    }
    checks.push_back({"counting_oracle", bad == 0,
                      std::to_string(bad) + " mismatches for integer s <= " + std::to_string(top)});
  }
  {
    std::mt19937_64 rng(common.seed);
    std::uniform_real_distribution<double> dist(1.0, limit);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double s = dist(rng);
      const double rhs = remainder_H_scaled(s / (2.0L * std::numbers::pi_v<long double>), seq) +
                         remainder_torus(s, seq);
      worst = std::max(worst, std::abs(remainder(s, seq).remainder - rhs));
    }
    checks.push_back({"cancellation_identity", worst <= 1e-9, "max difference " + format_real(worst)});
  }
  {
    double worst = 0.0;
    for (double T : {1e2, 1e3}) {
      if (T > limit) continue;
      for (int k = 1; k <= 3; ++k) {
        const double a = moment_integral(T, k, seq).value;
        const double b = moment_integral_quadrature(T, k, seq).value;
        worst = std::max(worst, std::abs(a - b) / std::abs(a));
      }
    }
    checks.push_back({"moment_oracle", worst <= 1e-6, "max relative difference " + format_real(worst)});
  }
  {
    const double T = std::min(1e4, limit / kTwoPi);
    std::size_t violations = 0;
    std::size_t total = 0;
    for (double gamma : {11.0 / 14.0, 0.8, 1.0}) {
      for (int i = 1; i <= 100; ++i) {
        const double t = std::exp(std::log(T) * i / 101.0);
        ++total;
        if (!sandwich_check(t, T, gamma, 3.0, seq).holds) ++violations;
      }
    }
    checks.push_back({"sandwich", violations == 0,
                      std::to_string(violations) + " violations in " + std::to_string(total) +
                          " checks at T = " + format_real(T)});
  }
  {
    const auto cache = build_spectrum_cache(std::min(limit, 1e5));
    std::stringstream buf;
    write_cache(buf, cache);
    const auto back = read_cache(buf);
    const bool same = back.entries == cache.entries &&
                      JumpSequence::from_entries(back.limit, back.entries) ==
                          JumpSequence::from_entries(cache.limit, cache.entries);
    checks.push_back({"cache_round_trip", same, std::to_string(cache.entries.size()) + " entries"});
  }

  const bool passed = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  if (common.format == "csv") {
    std::cout << "check,passed,detail\n";
    for (const auto& c : checks) {
      std::cout << c.name << ',' << (c.passed ? "true" : "false") << ",\"" << c.detail << "\"\n";
    }
  } else {
    json list = json::array();
    for (const auto& c : checks) {
      list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    emit({{"command", "verify"}, {"limit", limit}, {"passed", passed}, {"checks", list}});
  }
  return passed ? kOk : kVerifyFailed;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--cache", common.cache, "eigenvalue cache file");
  sub->add_flag("--no-cache", common.no_cache, "enumerate without reading or writing a cache");
  sub->add_option("--format", common.format, "csv or json")->capture_default_str();
  sub->add_option("--threads", common.threads, "enumeration threads, or 'auto'")->capture_default_str();
  sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral and moment computations for the Heisenberg manifold Weyl law"};
  app.require_subcommand(1);
  Common common;

  double limit = 1e4;
  double T = 1e3;
  int k = 3;
  double gamma = 11.0 / 14.0;
  double alpha = 11.0 / 7.0 + 0.01;
  std::string grid = "1e3:2:11";
  std::string remainder_grid = "1:2:21";
  bool torus = false;
  double b3_limit = 10000;
  double c2_nmax = 1e6;
  double samples = 200;

  auto* spectrum = app.add_subcommand("spectrum", "enumerate eigenvalues up to --limit");
  spectrum->add_option("--limit", limit, "spectral cutoff")->required();
  add_common(spectrum, common);

  auto* rem = app.add_subcommand("remainder", "R(s) = N(s) - kappa s^{3/2} on a geometric grid");
  rem->add_option("--grid", remainder_grid, "start:ratio:count")->capture_default_str();
  add_common(rem, common);

  auto* mom = app.add_subcommand("moments", "cumulative moments of R on a geometric grid");
  mom->add_option("--k", k, "moment order 1, 2 or 3")->capture_default_str();
  mom->add_option("--grid", grid, "start:ratio:count")->capture_default_str();
  mom->add_flag("--torus", torus, "flat-torus branch with remainder N_T(s) - s/4pi");
  add_common(mom, common);

  auto* exs = app.add_subcommand("expsum", "exponential-sum remainder against exact counts");
  exs->add_option("--T", T, "range [1, T] of the rescaled variable")->capture_default_str();
  exs->add_option("--gamma", gamma, "mollifier exponent, epsilon = T^-gamma")->capture_default_str();
  exs->add_option("--alpha", alpha, "truncation exponent, mu*nu < T^alpha")->capture_default_str();
  exs->add_option("--samples", samples, "number of sample points")->capture_default_str();
  add_common(exs, common);

  auto* cst = app.add_subcommand("constants", "resonance series b3, d3 and the torus constant c2");
  cst->add_option("--b3-limit", b3_limit, "bound on k*m3^2")->capture_default_str();
  cst->add_option("--c2-nmax", c2_nmax, "terms of the c2 series")->capture_default_str();
  add_common(cst, common);

  auto* ver = app.add_subcommand("verify", "oracle, identity, sandwich and cache checks");
  ver->add_option("--limit", limit, "spectral cutoff")->capture_default_str();
  add_common(ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    check_format(common);
    (void)thread_count(common);
    if (*spectrum) return run_spectrum(limit, common);
    if (*rem) return run_remainder(remainder_grid, common);
    if (*mom) return run_moments(k, grid, torus, common);
    if (*exs) return run_expsum(T, gamma, alpha, samples, common);
    if (*cst) return run_constants(b3_limit, c2_nmax, common);
    if (*ver) return run_verify(limit, common);
  } catch (const Error& e) {
    std::cerr << "hweyl: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::UnsupportedMoment:
      case ErrorKind::OutOfRange:
      case ErrorKind::CutoffTooLarge:
      case ErrorKind::TermBudgetExceeded:
        return kInvalid;
      case ErrorKind::Io:
        return kIo;
      default:
        return kFailure;
    }
  } catch (const fs::filesystem_error& e) {
    std::cerr << "hweyl: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "hweyl: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
