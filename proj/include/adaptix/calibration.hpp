// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/detail/env.hpp>
#include <adaptix/estimates.hpp>
#include <adaptix/worker_pool.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adaptix {

namespace detail {

    inline nanos detect_clock_resolution()
    {
        using clock = std::chrono::steady_clock;
        nanos best = nanos::max();
        for (int i = 0; i < 256; ++i)
        {
            auto const t0 = clock::now();
            auto t1 = clock::now();
            while (t1 == t0)
                t1 = clock::now();
            best = std::min(best, std::chrono::duration_cast<nanos>(t1 - t0));
        }
        return std::max(best, nanos(1));
    }

}    // namespace detail

/// Smallest observable tick of the steady clock on this machine, measured
/// once per process.
inline nanos clock_resolution()
{
    static nanos const cached = detail::detect_clock_resolution();
    return cached;
}

///////////////////////////////////////////////////////////////////////////
/// Measure the per-task scheduling overhead of a pool by timing empty
/// tasks, one in flight at a time, from submission to completion.
///
/// Returns the median of the samples; the mean would be dragged around by
/// scheduler jitter outliers. The pool must be warm so that thread start-up
/// does not pollute the first sample. The result is cached on the pool.
inline overhead_estimate measure_overhead(worker_pool& pool, std::uint64_t repetitions)
{
    using clock = std::chrono::steady_clock;

    if (repetitions < 1)
        throw std::invalid_argument("measure_overhead: repetitions must be >= 1");
    if (!pool.started())
        throw std::logic_error("measure_overhead: pool is not started");
    if (!pool.warm())
        throw std::logic_error(
            "measure_overhead: pool is cold; run at least one task first");

    std::vector<nanos> samples;
    samples.reserve(repetitions);
    for (std::uint64_t i = 0; i < repetitions; ++i)
    {
        auto const begin = clock::now();
        pool.submit([] {}).wait();
        samples.push_back(std::chrono::duration_cast<nanos>(clock::now() - begin));
    }
    std::sort(samples.begin(), samples.end());

    nanos const median = samples[samples.size() / 2];
    nanos const iqr = samples[(samples.size() * 3) / 4] - samples[samples.size() / 4];
    if (median < clock_resolution())
        throw std::runtime_error("measure_overhead: insufficient clock resolution");

    overhead_estimate estimate{median, repetitions, iqr};
    pool.cache_overhead(estimate);
    return estimate;
}

/// Overhead for planning purposes: the ADAPTIX_T0_NS override when set,
/// otherwise the pool's cached estimate, otherwise a fresh measurement
/// (warming the pool first if needed).
inline overhead_estimate acquire_overhead(worker_pool& pool, std::uint64_t repetitions = 100)
{
    if (auto t0 = detail::env_u64("ADAPTIX_T0_NS"); t0 && *t0 > 0)
        return overhead_estimate{nanos(static_cast<nanos::rep>(*t0)), 1, nanos(0)};
    if (auto cached = pool.cached_overhead())
        return *cached;
    if (!pool.warm())
        pool.warm_up();
    return measure_overhead(pool, repetitions);
}

///////////////////////////////////////////////////////////////////////////
/// Measure the per-element cost of a loop body by running it sequentially
/// over a prefix of the index space, timed as one block.
///
/// Starts with k = min(budget, count) indices and keeps doubling the sample
/// while the accumulated block time stays below ten clock ticks, never
/// re-executing an index. When the whole index space is exhausted below
/// that threshold the estimate is returned with low_confidence set instead
/// of failing; a cheap loop over few elements is a legitimate workload.
///
/// The executed prefix is real work: sampled_iterations tells the caller
/// how many leading indices are already done and must be excluded from any
/// subsequent run.
template <typename Body>
iteration_estimate measure_iteration(
    Body&& body, std::uint64_t count, std::uint64_t budget = 16)
{
    using clock = std::chrono::steady_clock;

    if (count < 1)
        throw std::invalid_argument("measure_iteration: count must be >= 1");
    if (budget < 1)
        throw std::invalid_argument("measure_iteration: budget must be >= 1");

    nanos const threshold = 10 * clock_resolution();
    std::uint64_t done = 0;
    std::uint64_t step = std::min(budget, count);
    nanos elapsed{0};
    for (;;)
    {
        auto const begin = clock::now();
        body(done, done + step);
        elapsed += std::chrono::duration_cast<nanos>(clock::now() - begin);
        done += step;
        if (elapsed >= threshold || done == count)
            break;
        step = std::min(step * 2, count - done);
    }

    iteration_estimate estimate;
    estimate.t_iter = real_nanos(
        static_cast<double>(elapsed.count()) / static_cast<double>(done));
    estimate.sampled_iterations = done;
    estimate.measured_once = true;
    estimate.low_confidence = elapsed < threshold;
    return estimate;
}

}    // namespace adaptix
