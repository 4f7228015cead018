#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sfcnl {

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

/// Runs fn(index) for every index in [0, count) on `threads` workers.
/// Work is handed out in fixed-size batches; fn must not depend on assignment.
template <class Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn, std::uint64_t batch = 8) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= batch) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t begin = next.fetch_add(batch);
            if (begin >= count) return;
            const std::uint64_t end = std::min(begin + batch, count);
            try {
                for (std::uint64_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// Commits results of parallel tasks strictly in index order: each worker
/// computes task i, then waits until all tasks < i have been committed before
/// running the commit step. Keeps floating-point merge order independent of
/// the worker count.
template <class Compute, class Commit>
void parallel_ordered(std::uint64_t count, int threads, Compute&& compute, Commit&& commit) {
    threads = resolve_threads(threads);
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) commit(i, compute(i));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::uint64_t committed = 0;
    std::mutex mutex;
    std::condition_variable cv;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                auto result = compute(i);
                std::unique_lock lock(mutex);
                cv.wait(lock, [&] { return committed == i || error; });
                if (error) return;
                commit(i, std::move(result));
                ++committed;
                cv.notify_all();
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error) error = std::current_exception();
                cv.notify_all();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sfcnl
