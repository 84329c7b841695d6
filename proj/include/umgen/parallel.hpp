#pragma once

#include <cstddef>
#include <functional>

namespace umgen::parallel {

/// Worker count actually used for `requested` (0 means hardware default).
int resolve_threads(int requested);

/// Runs `body(chunk_index, begin, end)` over [0, total) split into chunks of
/// `grain` items. Chunk boundaries depend only on (total, grain), never on
/// the worker count, so chunk-indexed side effects are scheduling-invariant.
/// Exceptions from workers are rethrown on the calling thread.
void for_chunks(std::size_t total, std::size_t grain, int threads,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace umgen::parallel
