#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace qhe {

void set_thread_count(unsigned n);  // 0 selects the hardware concurrency
unsigned thread_count();

// Runs fn(i) for i in [0, n). Each index must write only its own output slot;
// the first exception by index order is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qhe
