#pragma once

#include <cstddef>
#include <functional>

namespace hsbmo {

// Worker count: hardware concurrency capped by the HSBMO_THREADS environment
// variable (>= 1).
int worker_count();

// Static partition of [0, n) into worker chunks; fn(begin, end) per chunk.
// Outputs must be written to disjoint locations; reductions happen after.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace hsbmo
