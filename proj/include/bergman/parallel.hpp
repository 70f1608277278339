#pragma once

#include <cstddef>
#include <functional>

namespace bergman {

/// Worker count: BERGMAN_KIT_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count();

/// Calls f(i) for i in [0, count) across worker threads. Each index is visited
/// exactly once, so results written to slot i are independent of scheduling.
/// The first exception thrown by any f(i) is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

}  // namespace bergman
