// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <functional>

namespace otfs {

/// Runs fn(i) for every i in [0, count) across up to `threads` workers
/// (0 = hardware concurrency, 1 = inline). Results are deterministic as long
/// as fn(i) writes only slot i of its outputs; aggregation order is then
/// fixed by the caller, not by scheduling. The first exception thrown by any
/// fn(i) is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

} // namespace otfs
