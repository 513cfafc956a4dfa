#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace specklab {

/// Worker count: SPECKLAB_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// Results must be written to slot i by the caller, which keeps output
/// independent of scheduling. The exception from the lowest failing index
/// is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace specklab
