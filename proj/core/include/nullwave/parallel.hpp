#pragma once

#include <cstddef>
#include <functional>

namespace nullwave {

/// Worker count for a hint; 0 means one per hardware thread.
unsigned resolve_workers(unsigned hint) noexcept;

/// Runs body(k) for k in [0, count) on up to `workers` threads. Indices are handed
/// out dynamically; callers write results into slot k so the outcome never depends
/// on scheduling. The first exception thrown by any body is rethrown after all
/// workers stop.
void for_each_index(std::size_t count, unsigned workers,
                    const std::function<void(std::size_t)>& body);

}  // namespace nullwave
