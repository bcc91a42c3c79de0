#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace ffstat {

/// How indicator transforms are evaluated: exact cyclotomic sums per frequency, or axis-by-axis DFTs.
enum class TransformRoute { Auto, Direct, Separable };

struct RunOptions {
    unsigned threads = 1;
    /// Upper bound on enumerated points (|S| or q^n, whichever the operation needs).
    std::uint64_t budget = std::uint64_t{1} << 24;
    TransformRoute route = TransformRoute::Auto;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, total) into `shards` contiguous ranges and runs fn(shard, begin, end)
/// on each, one thread per shard. Results written per shard and merged in shard
/// order are independent of the thread count whenever the merge is associative.
template <typename Fn>
void for_each_shard(std::uint64_t total, unsigned shards, Fn&& fn) {
    shards = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(shards, total)));
    if (shards == 1) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(shards);
    workers.reserve(shards);
    for (unsigned s = 0; s < shards; ++s) {
        const std::uint64_t begin = total * s / shards;
        const std::uint64_t end = total * (s + 1) / shards;
        workers.emplace_back([&, s, begin, end] {
            try {
                fn(s, begin, end);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Pairwise summation of xs in index order.
inline double pairwise_sum(const double* xs, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs, half) + pairwise_sum(xs + half, n - half);
}

}  // namespace ffstat
