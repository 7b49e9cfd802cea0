#pragma once

#include <cstddef>
#include <functional>

namespace conicdet {

/// Worker count used by parallel_for. 0 restores the default (hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n). Each index is visited exactly once; callers
/// write into per-index slots so results never depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace conicdet
