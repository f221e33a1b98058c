#include "hyperdecay/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyperdecay {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads = std::max(0, n); }

int max_threads() {
    int n = g_max_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t count, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    if (chunk == 0) chunk = count;
    const std::size_t nchunks = chunk_count(count, chunk);
    const std::size_t workers = std::min<std::size_t>(nchunks, static_cast<std::size_t>(max_threads()));

    auto run = [&](std::size_t c) {
        std::size_t b = c * chunk;
        body(c, b, std::min(count, b + chunk));
    };

    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) run(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                try {
                    run(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    next = nchunks;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    std::size_t chunk = std::max<std::size_t>(1, count / (8 * static_cast<std::size_t>(max_threads())) + 1);
    parallel_chunks(count, chunk, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) body(i);
    });
}

}  // namespace hyperdecay
