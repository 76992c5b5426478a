// parallel.hpp — index-ordered parallel map

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace entgen::parallel {

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// results[i] = fn(i). Work is split into contiguous chunks; the output depends only on the
// index, never on which worker computed it.
template <class Fn>
auto map_indexed(std::size_t n, unsigned threads, Fn&& fn) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(n);
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

// Index of the smallest key; ties go to the lowest index.
template <class T, class Key>
std::size_t argmin(const std::vector<T>& v, Key&& key) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (key(v[i]) < key(v[best])) best = i;
    return best;
}

} // namespace entgen::parallel
