#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace graphmark {

/// Worker count: the explicit request, else GRAPHMARK_THREADS, else the
/// number of logical cores (at least 1).
int resolve_threads(std::optional<int> requested = std::nullopt);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome never depends on scheduling. If any call throws, the exception
/// from the smallest failing index is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace graphmark
