#pragma once

#include <functional>

namespace hyperg {

/// Worker cap: min(hardware_concurrency, HYPERG_THREADS if set). At least 1.
int max_threads();

/// Runs fn(0..n-1) on up to max_threads() workers. Callers must make the work
/// per index independent (each index owns its seed and its output slot), so
/// the result is identical for any schedule.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hyperg
