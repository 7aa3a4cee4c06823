// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/detail/env.hpp>
#include <adaptix/estimates.hpp>

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace adaptix {

/// Detected worker count for this process: the ADAPTIX_CORES environment
/// variable when set, otherwise the hardware concurrency (with a floor of
/// one on platforms that report zero).
inline unsigned detected_cores()
{
    if (auto env = detail::env_u64("ADAPTIX_CORES"); env && *env >= 1)
        return static_cast<unsigned>(*env);
    unsigned const hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

///////////////////////////////////////////////////////////////////////////
/// Fixed-size pool of worker threads fed from one shared task queue.
///
/// The pool is the executor every parallel invocation runs on. Its size is
/// fixed at construction; throttling an invocation to fewer workers is done
/// by submitting fewer runner tasks, not by resizing the pool. Handles may
/// be shared across threads. Blocking on pool work from inside a worker is
/// not supported (no nested parallelism).
class worker_pool
{
public:
    /// Start a pool with the given worker count, or with detected_cores()
    /// when no override is supplied. An override of zero is rejected.
    explicit worker_pool(std::optional<unsigned> cores_override = std::nullopt)
    {
        if (cores_override && *cores_override == 0)
            throw std::invalid_argument("worker_pool: core override must be >= 1");
        hardware_cores_ = cores_override ? *cores_override : detected_cores();
        workers_.reserve(hardware_cores_);
        for (unsigned i = 0; i < hardware_cores_; ++i)
            workers_.emplace_back([this] { worker_loop(); });
        started_ = true;
    }

    worker_pool(worker_pool const&) = delete;
    worker_pool& operator=(worker_pool const&) = delete;

    ~worker_pool() { stop(); }

    unsigned hardware_cores() const noexcept { return hardware_cores_; }

    bool started() const noexcept { return started_; }

    /// True once at least one task has run to completion.
    bool warm() const noexcept { return completed_.load(std::memory_order_acquire) > 0; }

    /// Run one empty task to completion, leaving the pool warm.
    void warm_up()
    {
        submit([] {}).wait();
    }

    /// Enqueue one task; the future becomes ready when it has run.
    std::future<void> submit(std::function<void()> task)
    {
        if (!started_)
            throw std::logic_error("worker_pool: submit on a stopped pool");
        std::packaged_task<void()> wrapped(std::move(task));
        auto fut = wrapped.get_future();
        {
            std::lock_guard<std::mutex> lock(queue_mutex_);
            queue_.emplace_back(std::move(wrapped));
        }
        queue_cv_.notify_one();
        return fut;
    }

    /// Join all workers. Tasks already queued still run; submitting after
    /// stop() is an error. Called implicitly by the destructor.
    void stop()
    {
        if (!started_)
            return;
        {
            std::lock_guard<std::mutex> lock(queue_mutex_);
            stopping_ = true;
        }
        queue_cv_.notify_all();
        for (auto& worker : workers_)
            worker.join();
        workers_.clear();
        started_ = false;
    }

    // Per-pool cache for the measured scheduling overhead. The calibration
    // layer writes it; invalidate() forces the next acquisition to re-measure.
    std::optional<overhead_estimate> cached_overhead() const
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        return cached_overhead_;
    }

    void cache_overhead(overhead_estimate estimate)
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        cached_overhead_ = estimate;
    }

    void invalidate_overhead()
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        cached_overhead_.reset();
    }

private:
    void worker_loop()
    {
        for (;;)
        {
            std::packaged_task<void()> task;
            {
                std::unique_lock<std::mutex> lock(queue_mutex_);
                queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
                if (queue_.empty())
                {
                    if (stopping_)
                        return;
                    continue;
                }
                task = std::move(queue_.front());
                queue_.pop_front();
            }
            task();
            completed_.fetch_add(1, std::memory_order_release);
        }
    }

    unsigned hardware_cores_ = 1;
    std::atomic<bool> started_{false};
    bool stopping_ = false;
    std::vector<std::thread> workers_;
    std::deque<std::packaged_task<void()>> queue_;
    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::atomic<std::uint64_t> completed_{0};

    mutable std::mutex cache_mutex_;
    std::optional<overhead_estimate> cached_overhead_;
};

}    // namespace adaptix
