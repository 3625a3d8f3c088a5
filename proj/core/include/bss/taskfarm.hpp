#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bss {

enum class Strategy { Broadcast, ScatterGather };

struct FarmConfig {
  int workers = 1;
  Strategy strategy = Strategy::Broadcast;
  int level = 1;  // 1 = per protein pair, 2 = per ligand pair
  std::chrono::milliseconds barrier_timeout{30000};
};

Strategy parse_strategy(const std::string& name);  // "broadcast" | "scatter"
std::string strategy_name(Strategy s);

// Reusable cyclic barrier. arrive_and_wait throws "barrier timeout (...)"
// naming the ranks that never arrived.
class Barrier {
 public:
  explicit Barrier(int parties,
                   std::chrono::milliseconds timeout = std::chrono::milliseconds{30000});
  void arrive_and_wait(int rank);

 private:
  int parties_;
  std::chrono::milliseconds timeout_;
  std::mutex mutex_;
  std::condition_variable cv_;
  int waiting_ = 0;
  long generation_ = 0;
  std::vector<char> arrived_;
};

// Per-task result slot: either a value or the error text of the thrown
// exception. Failures never abort the run.
template <typename R>
struct TaskOutcome {
  std::optional<R> value;
  std::string error;
  bool ok() const { return value.has_value(); }
};

template <typename R>
struct FarmResult {
  std::vector<TaskOutcome<R>> results;  // in task-index order
  double wall_seconds = 0.0;            // barrier-delimited timed region
};

namespace detail {

template <typename Task, typename R, typename Fn>
void run_task_into(std::vector<TaskOutcome<R>>& slots, std::size_t index,
                   const Task& task, Fn& fn) {
  try {
    slots[index].value = fn(task);
  } catch (const std::exception& e) {
    slots[index].error = e.what();
  }
}

}  // namespace detail

// Broadcast: every worker sees the full task list (one shared immutable
// view) and self-selects the indices congruent to its rank mod P.
template <typename Task, typename R, typename Fn>
FarmResult<R> broadcast_run(const std::vector<Task>& tasks, const FarmConfig& cfg,
                            Fn fn) {
  if (tasks.empty()) throw std::runtime_error("no tasks");
  const int workers = std::max(1, cfg.workers);

  FarmResult<R> out;
  out.results.resize(tasks.size());

  Barrier entry(workers + 1, cfg.barrier_timeout);
  Barrier exit(workers + 1, cfg.barrier_timeout);

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int rank = 0; rank < workers; ++rank) {
    pool.emplace_back([&, rank] {
      entry.arrive_and_wait(rank);
      for (std::size_t i = rank; i < tasks.size(); i += workers)
        detail::run_task_into(out.results, i, tasks[i], fn);
      exit.arrive_and_wait(rank);
    });
  }

  entry.arrive_and_wait(workers);  // root; timed region starts past the barrier
  auto t0 = std::chrono::steady_clock::now();
  exit.arrive_and_wait(workers);
  auto t1 = std::chrono::steady_clock::now();
  out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  for (auto& t : pool) t.join();
  return out;
}

// Scatter-gather: the root hands each worker only its contiguous chunk
// (first T mod P workers get one extra task) and concatenates the per-worker
// result vectors in rank order, which restores task-index order.
template <typename Task, typename R, typename Fn>
FarmResult<R> scatter_gather_run(const std::vector<Task>& tasks, const FarmConfig& cfg,
                                 Fn fn) {
  if (tasks.empty()) throw std::runtime_error("no tasks");
  const int workers = std::max(1, cfg.workers);
  const std::size_t total = tasks.size();

  // scatter: chunk copies, the worker never sees the full list
  std::vector<std::vector<Task>> chunks(workers);
  std::size_t base = total / workers, extra = total % workers, pos = 0;
  for (int r = 0; r < workers; ++r) {
    std::size_t len = base + (static_cast<std::size_t>(r) < extra ? 1 : 0);
    chunks[r].assign(tasks.begin() + pos, tasks.begin() + pos + len);
    pos += len;
  }

  std::vector<std::vector<TaskOutcome<R>>> gathered(workers);
  Barrier entry(workers + 1, cfg.barrier_timeout);
  Barrier exit(workers + 1, cfg.barrier_timeout);

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int rank = 0; rank < workers; ++rank) {
    pool.emplace_back([&, rank] {
      gathered[rank].resize(chunks[rank].size());
      entry.arrive_and_wait(rank);
      for (std::size_t i = 0; i < chunks[rank].size(); ++i)
        detail::run_task_into(gathered[rank], i, chunks[rank][i], fn);
      exit.arrive_and_wait(rank);
    });
  }

  entry.arrive_and_wait(workers);
  auto t0 = std::chrono::steady_clock::now();
  exit.arrive_and_wait(workers);
  auto t1 = std::chrono::steady_clock::now();

  FarmResult<R> out;
  out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  for (int r = 0; r < workers; ++r)
    for (auto& slot : gathered[r]) out.results.push_back(std::move(slot));

  for (auto& t : pool) t.join();
  return out;
}

template <typename Task, typename R, typename Fn>
FarmResult<R> run_farm(const std::vector<Task>& tasks, const FarmConfig& cfg, Fn fn) {
  if (cfg.strategy == Strategy::Broadcast)
    return broadcast_run<Task, R>(tasks, cfg, std::move(fn));
  return scatter_gather_run<Task, R>(tasks, cfg, std::move(fn));
}

// Level dispatch. pipeline_fn(task, inner) must route its inner fan-out
// stage through run_farm with the `inner` config it is given.
// Level 1: whole tasks are farmed out, inner stays sequential.
// Level 2: tasks run one at a time at the root, inner gets the farm.
template <typename Task, typename R, typename Fn>
FarmResult<R> run_level(const std::vector<Task>& tasks, const FarmConfig& cfg,
                        Fn pipeline_fn) {
  if (tasks.empty()) throw std::runtime_error("no tasks");
  if (cfg.level == 1) {
    FarmConfig inner = cfg;
    inner.workers = 1;
    return run_farm<Task, R>(tasks, cfg, [&](const Task& t) {
      return pipeline_fn(t, inner);
    });
  }

  FarmResult<R> out;
  out.results.resize(tasks.size());
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    try {
      out.results[i].value = pipeline_fn(tasks[i], cfg);
    } catch (const std::exception& e) {
      out.results[i].error = e.what();
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return out;
}

}  // namespace bss
