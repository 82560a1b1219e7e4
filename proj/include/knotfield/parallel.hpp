#pragma once

#include <functional>

namespace knotfield {

/// Number of worker threads: hardware concurrency, capped by the
/// KNOTFIELD_THREADS environment variable when set.
int thread_count();

/// Runs fn(i) for i in [0, n) across the worker threads. fn must be safe to
/// call concurrently for distinct i (pure functions over disjoint outputs).
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace knotfield
