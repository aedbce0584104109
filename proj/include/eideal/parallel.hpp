#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace eideal {

/// Worker count: explicit value if positive, else EIDEAL_WORKERS, else the
/// hardware concurrency.
inline unsigned resolve_workers(int requested = 0) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("EIDEAL_WORKERS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs body(i) for i in [0, count) on up to `workers` threads. Results must
/// be written to per-index slots; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned t = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace eideal
