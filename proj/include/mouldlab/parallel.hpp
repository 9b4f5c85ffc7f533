#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace mouldlab {

// Worker cap: MOULDLAB_THREADS if set to a positive integer, else hardware concurrency.
inline unsigned worker_limit() {
  if (const char* env = std::getenv("MOULDLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs every task and returns results in task order, whatever the completion order.
template <class R>
std::vector<R> run_tasks(const std::vector<std::function<R()>>& tasks, unsigned workers = worker_limit()) {
  std::vector<R> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(std::max(1u, workers), static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace mouldlab
