#pragma once

#include <functional>

namespace rssgeo {

/// Worker count: RSSGEO_THREADS when set (clamped to >= 1), otherwise
/// std::thread::hardware_concurrency().
int thread_budget();

/// Runs f(i) for i in [0, count) on a small worker pool.  Work items must be
/// independent and must not throw; callers get determinism by writing to
/// index-addressed slots.  With a budget of one this is a plain loop.
void parallel_for(int count, const std::function<void(int)>& f);

}  // namespace rssgeo
