#include "symsq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace symsq {

int default_workers() {
  if (const char* env = std::getenv("SYMSQ_WORKERS")) {
    try {
      int w = std::stoi(env);
      if (w > 0) return w;
    } catch (const std::exception&) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void run_partitions(const ExecPolicy& policy, const std::function<void(int)>& body) {
  if (policy.partitions < 1) throw std::invalid_argument("partition count must be >= 1");
  if (policy.workers < 0) throw std::invalid_argument("worker count must be >= 0");
  int workers = policy.workers ? policy.workers : default_workers();
  workers = std::min(workers, policy.partitions);

  if (workers <= 1) {
    for (int p = 0; p < policy.partitions; ++p) body(p);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int p = next++; p < policy.partitions; p = next++) {
        try {
          body(p);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace symsq
