#pragma once

#include <string>
#include <vector>

#include "bss/pipeline.hpp"

namespace bss {

struct BreakdownRow {
  std::string id_a;
  std::string id_b;
  int find_iso_calls = 0;
  int find_mcs_calls = 0;
  double iso_share_pct = 0.0;  // of the pair's total time
  double mcs_share_pct = 0.0;
  double remaining_share_pct = 0.0;
  double total_seconds = 0.0;
};

struct Breakdown {
  std::vector<BreakdownRow> per_pair;
  BreakdownRow aggregate;  // ids empty, counts and times summed
};

Breakdown breakdown_report(const std::vector<PairResult>& results);
std::string format_breakdown(const Breakdown& b);

}  // namespace bss
