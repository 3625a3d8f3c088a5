#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace bss {

struct BenchStats {
  std::vector<double> samples;  // seconds
  double mean = 0.0;
  double ci_half_width = 0.0;  // 95%, normal approximation
};

// (mean, 1.96 * s / sqrt(n)) with the n-1 sample standard deviation.
// Throws "need >= 2 samples".
std::pair<double, double> mean_ci(const std::vector<double>& samples);

BenchStats make_stats(std::vector<double> samples);

// 100 * (mean_a - mean_b) / mean_a; throws on a non-positive baseline.
double speedup_report(const BenchStats& a, const BenchStats& b);

// One sample per line; blank lines and a header line are skipped, decimal
// commas are accepted (the source tables print them).
std::vector<double> read_samples(const std::filesystem::path& path);
std::vector<double> parse_samples(const std::string& text);

// the mean ± CI table shape used by the bench subcommand
std::string format_bench_table(const BenchStats& stats);

}  // namespace bss
