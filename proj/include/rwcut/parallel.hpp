#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rwcut {

/// Splits [0, count) into `workers` contiguous shards and runs
/// fn(shard_index, begin, end) for each, on its own thread when workers > 1.
/// Shard boundaries depend only on (count, workers).
template <typename Fn>
void parallel_shards(std::size_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, workers);
    if (count == 0) {
        return;
    }
    const std::size_t shards = std::min<std::size_t>(workers, count);
    if (shards == 1) {
        fn(std::size_t{0}, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(shards);
    pool.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) {
        const std::size_t begin = count * s / shards;
        const std::size_t end = count * (s + 1) / shards;
        pool.emplace_back([&, s, begin, end] {
            try {
                fn(s, begin, end);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace rwcut
