#include "umgen/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace umgen::parallel {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void for_chunks(std::size_t total, std::size_t grain, int threads,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (total == 0) return;
    if (grain == 0) grain = 1;
    const std::size_t n_chunks = (total + grain - 1) / grain;

    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * grain;
        const std::size_t end = std::min(total, begin + grain);
        body(c, begin, end);
    };

    const int n_workers =
        static_cast<int>(std::min<std::size_t>(resolve_threads(threads), n_chunks));
    if (n_workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            try {
                run_chunk(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace umgen::parallel
