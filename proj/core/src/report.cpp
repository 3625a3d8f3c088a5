#include "bss/report.hpp"

#include <cstdio>
#include <sstream>

namespace bss {

namespace {

BreakdownRow make_row(const std::string& id_a, const std::string& id_b,
                      const TimingBreakdown& t) {
  BreakdownRow row;
  row.id_a = id_a;
  row.id_b = id_b;
  row.find_iso_calls = t.find_iso_calls;
  row.find_mcs_calls = t.find_mcs_calls;
  row.total_seconds = t.total_seconds;
  if (t.total_seconds > 0) {
    row.iso_share_pct = 100.0 * t.find_iso_seconds / t.total_seconds;
    row.mcs_share_pct = 100.0 * t.find_mcs_seconds / t.total_seconds;
    row.remaining_share_pct = 100.0 - row.iso_share_pct - row.mcs_share_pct;
  }
  return row;
}

}  // namespace

Breakdown breakdown_report(const std::vector<PairResult>& results) {
  Breakdown out;
  TimingBreakdown sum;
  for (const PairResult& r : results) {
    out.per_pair.push_back(make_row(r.id_a, r.id_b, r.timing));
    sum.find_iso_calls += r.timing.find_iso_calls;
    sum.find_iso_seconds += r.timing.find_iso_seconds;
    sum.find_mcs_calls += r.timing.find_mcs_calls;
    sum.find_mcs_seconds += r.timing.find_mcs_seconds;
    sum.total_seconds += r.timing.total_seconds;
  }
  out.aggregate = make_row("", "", sum);
  return out;
}

std::string format_breakdown(const Breakdown& b) {
  std::ostringstream os;
  char buf[160];
  os << "pair            iso_calls  mcs_calls  iso%     mcs%     remaining%  total_s\n";
  auto line = [&](const BreakdownRow& r, const std::string& label) {
    std::snprintf(buf, sizeof buf, "%-15s %9d  %9d  %6.2f%%  %6.2f%%  %9.2f%%  %.4f\n",
                  label.c_str(), r.find_iso_calls, r.find_mcs_calls, r.iso_share_pct,
                  r.mcs_share_pct, r.remaining_share_pct, r.total_seconds);
    os << buf;
  };
  for (const BreakdownRow& r : b.per_pair) line(r, r.id_a + "-" + r.id_b);
  line(b.aggregate, "TOTAL");
  return os.str();
}

}  // namespace bss
