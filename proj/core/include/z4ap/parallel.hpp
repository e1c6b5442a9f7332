#pragma once

#include <cstddef>
#include <functional>

namespace z4ap {

/// Runs f(i) for i in [0, count) on up to `threads` workers over fixed
/// contiguous chunks. f(i) must write only to slot i of preallocated
/// storage, which keeps every result byte-identical across thread counts.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& f);

}  // namespace z4ap
