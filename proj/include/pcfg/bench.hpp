#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcfg/query.hpp"

namespace pcfg {

inline constexpr const char* kEngineVeFg = "ve_fg";
inline constexpr const char* kEngineVeBn = "ve_bn";
inline constexpr const char* kEngineLve = "lve_pcfg";

struct BenchOptions {
  std::vector<std::size_t> sizes{8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::string query = "P(Rev | Comp(e1)=high; do(Train(e1,t1)=true))";
  std::vector<std::string> engines{kEngineVeFg, kEngineVeBn, kEngineLve};
  std::size_t repeats = 3;
  /// Ground engines are skipped above this domain size.
  std::size_t ground_cutoff = 256;
  /// Relative tolerance for cross-engine checksum agreement.
  double checksum_tolerance = 1e-9;
};

struct BenchRecord {
  std::string engine;
  std::size_t d = 0;
  std::string query;
  /// Median wall time; empty when skipped.
  std::optional<double> seconds;
  std::optional<double> checksum;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  /// One message per (d, engine) whose checksum disagrees with the first engine.
  std::vector<std::string> mismatches;
};

/// Instantiates the template for each size and times every engine on the
/// query. Ground engines time grounding (and BN conversion) plus VE; the
/// lifted engine times splitting, mutilation and LVE. Parsing is excluded.
BenchReport run_bench(std::string_view template_text, const BenchOptions& options);

/// `engine,d,query,seconds,checksum`; skipped rows carry `skipped`.
std::string to_csv(const BenchReport& report);

/// Sum over entries of (index + 1) * probability.
double checksum(const Distribution& dist);

/// "8,16,32" or a doubling sequence "8,16,...,4096".
std::vector<std::size_t> parse_sizes(std::string_view text);

}  // namespace pcfg
