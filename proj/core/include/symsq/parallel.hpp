#pragma once

#include <functional>

namespace symsq {

// partitions: how the outer index range is cut (results never depend on it).
// workers: threads used to run the partitions; 0 picks the default.
struct ExecPolicy {
  int partitions = 1;
  int workers = 0;
};

// SYMSQ_WORKERS if set and positive, else hardware concurrency (>= 1).
int default_workers();

// Runs body(p) for p in [0, partitions) on up to `workers` threads.
// The first exception thrown by any body is rethrown after all threads join.
void run_partitions(const ExecPolicy& policy, const std::function<void(int)>& body);

}  // namespace symsq
