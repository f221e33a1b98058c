#pragma once

#include <cstddef>
#include <functional>

namespace hyperdecay {

// 0 means hardware concurrency.
void set_max_threads(int n);
int max_threads();

// Runs body(begin, end) over [0, count) split into chunks of `chunk` items.
// Chunk boundaries do not depend on the thread count, so per-chunk partial
// results reduced in chunk order are deterministic.
void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline std::size_t chunk_count(std::size_t count, std::size_t chunk) {
    return chunk == 0 ? 0 : (count + chunk - 1) / chunk;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hyperdecay
