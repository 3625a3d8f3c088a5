#include "bss/stats.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bss {

std::pair<double, double> mean_ci(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::runtime_error("need >= 2 samples");

  double mean = 0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(n);

  double ss = 0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, 1.96 * sd / std::sqrt(static_cast<double>(n))};
}

BenchStats make_stats(std::vector<double> samples) {
  auto [mean, hw] = mean_ci(samples);
  return {std::move(samples), mean, hw};
}

double speedup_report(const BenchStats& a, const BenchStats& b) {
  if (a.mean <= 0) throw std::runtime_error("non-positive baseline mean");
  return 100.0 * (a.mean - b.mean) / a.mean;
}

std::vector<double> parse_samples(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c == ',' ? '.' : c);
    if (t.empty()) continue;
    try {
      std::size_t used = 0;
      double v = std::stod(t, &used);
      if (used == t.size()) out.push_back(v);
    } catch (const std::exception&) {
      // header or stray text line
    }
  }
  return out;
}

std::vector<double> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_samples(buf.str());
}

std::string format_bench_table(const BenchStats& stats) {
  std::ostringstream os;
  os << "EXECUTIONS\tTIME(seconds)\n";
  os.precision(7);
  os << std::fixed;
  for (std::size_t i = 0; i < stats.samples.size(); ++i)
    os << (i + 1) << '\t' << stats.samples[i] << '\n';
  os << "Average time\t" << stats.mean << " +-";
  os.precision(2);
  os << stats.ci_half_width << " at 95% CI\n";
  return os.str();
}

}  // namespace bss
