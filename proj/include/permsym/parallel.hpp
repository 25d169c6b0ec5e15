#pragma once

#include <cstddef>
#include <functional>

namespace permsym {

/// Worker count: PERMSYM_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
[[nodiscard]] std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; results must not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace permsym
