#pragma once

#include <functional>

namespace blaschke {

// Worker cap from BLASCHKE_LAB_THREADS; 0 or unset means hardware
// concurrency.
int thread_cap();

// Runs body(0..count-1) across up to thread_cap() workers. Each index is
// processed exactly once and writes only its own slot, so results are
// deterministic regardless of scheduling. The first exception thrown by a
// body is rethrown after all workers join.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace blaschke
