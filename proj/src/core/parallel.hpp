// Tiny work-sharing helper. Each item must be independent and write only to
// its own slot; together with per-item derived RNG streams this keeps results
// identical no matter how many workers run.
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace heartml::core {

inline std::size_t default_worker_count(std::size_t items) {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return hw < items ? hw : (items == 0 ? 1 : items);
}

inline void parallel_for(std::size_t items,
                         const std::function<void(std::size_t)>& body,
                         std::size_t workers = 0) {
    if (workers == 0) workers = default_worker_count(items);
    if (items == 0) return;
    if (workers <= 1) {
        for (std::size_t i = 0; i < items; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= items) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace heartml::core
