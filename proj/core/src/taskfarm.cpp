#include "bss/taskfarm.hpp"

#include <sstream>

namespace bss {

Strategy parse_strategy(const std::string& name) {
  if (name == "broadcast") return Strategy::Broadcast;
  if (name == "scatter") return Strategy::ScatterGather;
  throw std::runtime_error("unknown strategy: " + name);
}

std::string strategy_name(Strategy s) {
  return s == Strategy::Broadcast ? "broadcast" : "scatter";
}

Barrier::Barrier(int parties, std::chrono::milliseconds timeout)
    : parties_(parties), timeout_(timeout), arrived_(parties, 0) {
  if (parties < 1) throw std::runtime_error("barrier needs at least one party");
}

void Barrier::arrive_and_wait(int rank) {
  std::unique_lock lock(mutex_);
  long gen = generation_;
  if (rank >= 0 && rank < parties_) arrived_[rank] = 1;
  if (++waiting_ == parties_) {
    waiting_ = 0;
    ++generation_;
    std::fill(arrived_.begin(), arrived_.end(), 0);
    cv_.notify_all();
    return;
  }
  if (!cv_.wait_for(lock, timeout_, [&] { return generation_ != gen; })) {
    std::ostringstream os;
    os << "barrier timeout (absent ranks:";
    for (int r = 0; r < parties_; ++r)
      if (!arrived_[r]) os << ' ' << r;
    os << ")";
    throw std::runtime_error(os.str());
  }
}

}  // namespace bss
