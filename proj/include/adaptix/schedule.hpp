// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/execution_policy.hpp>
#include <adaptix/worker_pool.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <future>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace adaptix {

/// Half-open index range [begin, end).
struct index_range
{
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    std::uint64_t size() const noexcept { return end - begin; }
    friend bool operator==(index_range const&, index_range const&) = default;
};

/// Resolved execution parameters for one invocation: worker count, chunk
/// size and the chunk list itself. Chunks are disjoint, ascending and cover
/// the planned index space exactly; all but the last have length
/// chunk_size. A sequential plan has one worker and at most one chunk.
///
/// The covered space is [first_index, count): a policy that measured the
/// loop body by executing a prefix reports it via first_index, and those
/// indices are already done.
struct schedule_plan
{
    unsigned cores = 1;
    std::uint64_t chunk_size = 1;
    std::vector<index_range> chunks;
    bool sequential = true;
    std::uint64_t first_index = 0;
    std::uint64_t count = 0;
};

/// What one invocation did: wall time of the submit-to-join span, the
/// planned worker count, and how many chunks ran. complete is false only
/// inside a chunk_execution_error.
struct execution_report
{
    nanos wall_time{0};
    unsigned cores = 1;
    std::uint64_t chunk_count = 0;
    bool sequential = true;
    bool complete = true;
};

/// A policy hook returned a value outside its contract.
class policy_contract_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// The loop body threw while executing a chunk. Remaining chunks are
/// abandoned; the report inside describes the partial run.
class chunk_execution_error : public std::runtime_error
{
public:
    chunk_execution_error(std::uint64_t chunk_index, index_range range,
        std::string const& reason, execution_report partial)
      : std::runtime_error("chunk " + std::to_string(chunk_index) + " [" +
            std::to_string(range.begin) + ", " + std::to_string(range.end) +
            ") failed: " + reason)
      , chunk_index_(chunk_index)
      , range_(range)
      , partial_(partial)
    {
    }

    std::uint64_t chunk_index() const noexcept { return chunk_index_; }
    index_range range() const noexcept { return range_; }
    execution_report const& partial_report() const noexcept { return partial_; }

private:
    std::uint64_t chunk_index_;
    index_range range_;
    execution_report partial_;
};

///////////////////////////////////////////////////////////////////////////
/// Resolve a plan by consulting the policy's customization points in their
/// canonical order: measure the body, pick the worker count, pick the chunk
/// size. Hook results are validated against their contracts and violations
/// are reported naming the offending hook.
///
/// A worker count of one yields a sequential plan (a single chunk run on
/// the calling thread). The chunk size is additionally capped by the number
/// of indices left after the measurement prefix.
inline schedule_plan plan(execution_policy& policy, worker_pool& pool,
    loop_body const& body, std::uint64_t count)
{
    if (count < 1)
        throw std::invalid_argument("plan: count must be >= 1");
    if (!pool.started())
        throw std::logic_error("plan: pool is not started");

    auto const measured = policy.measure_iteration_hook(pool, body, count);
    if (measured.prefix_consumed > count)
        throw policy_contract_error(
            "measure_iteration_hook consumed more indices than the loop has");

    unsigned const cores = policy.processing_units_count(pool, measured.estimate, count);
    if (cores < 1 || cores > pool.hardware_cores())
        throw policy_contract_error(
            "processing_units_count returned " + std::to_string(cores) +
            ", outside [1, " + std::to_string(pool.hardware_cores()) + "]");

    std::uint64_t const chunk = policy.get_chunk_size(pool, measured.estimate, cores, count);
    if (chunk < 1 || chunk > count)
        throw policy_contract_error("get_chunk_size returned " +
            std::to_string(chunk) + ", outside [1, " + std::to_string(count) + "]");

    schedule_plan result;
    result.first_index = measured.prefix_consumed;
    result.count = count;

    std::uint64_t const remaining = count - measured.prefix_consumed;
    if (cores == 1 || remaining == 0)
    {
        result.sequential = true;
        result.cores = 1;
        result.chunk_size = std::max<std::uint64_t>(remaining, 1);
        if (remaining > 0)
            result.chunks.push_back({result.first_index, count});
        return result;
    }

    result.sequential = false;
    result.cores = cores;
    result.chunk_size = std::min(chunk, remaining);
    result.chunks.reserve(
        static_cast<std::size_t>(detail::ceil_div(remaining, result.chunk_size)));
    for (std::uint64_t lo = result.first_index; lo < count; lo += result.chunk_size)
        result.chunks.push_back({lo, std::min(lo + result.chunk_size, count)});
    return result;
}

///////////////////////////////////////////////////////////////////////////
/// Run a plan on the pool. Each chunk is one task; at most plan.cores
/// workers participate, pulling chunks in order from a shared cursor.
/// Blocks until all chunks are done. Sequential plans run on the calling
/// thread without touching the pool.
///
/// A throwing loop body aborts the invocation: no new chunks are started,
/// in-flight ones drain, and a chunk_execution_error naming the failing
/// chunk (with a partial report) is thrown.
inline execution_report execute(
    schedule_plan const& plan, worker_pool& pool, loop_body const& body)
{
    using clock = std::chrono::steady_clock;

    if (!pool.started())
        throw std::logic_error("execute: pool is not started");
    if (!plan.sequential && plan.cores > pool.hardware_cores())
        throw std::invalid_argument("execute: plan wants more workers than the pool has");

    execution_report report;
    report.cores = plan.cores;
    report.chunk_count = plan.chunks.size();
    report.sequential = plan.sequential;

    auto const begin = clock::now();

    if (plan.sequential)
    {
        for (auto const& range : plan.chunks)
        {
            try
            {
                body(range.begin, range.end);
            }
            catch (std::exception const& e)
            {
                report.wall_time = std::chrono::duration_cast<nanos>(clock::now() - begin);
                report.complete = false;
                throw chunk_execution_error(0, range, e.what(), report);
            }
            catch (...)
            {
                report.wall_time = std::chrono::duration_cast<nanos>(clock::now() - begin);
                report.complete = false;
                throw chunk_execution_error(0, range, "unknown exception", report);
            }
        }
        report.wall_time = std::chrono::duration_cast<nanos>(clock::now() - begin);
        return report;
    }

    struct shared_state
    {
        std::atomic<std::uint64_t> next{0};
        std::atomic<bool> failed{false};
        std::mutex error_mutex;
        std::uint64_t failed_chunk = 0;
        std::string failure_reason;
    } state;

    auto runner = [&plan, &body, &state] {
        for (;;)
        {
            if (state.failed.load(std::memory_order_acquire))
                return;
            std::uint64_t const i = state.next.fetch_add(1, std::memory_order_relaxed);
            if (i >= plan.chunks.size())
                return;
            try
            {
                body(plan.chunks[i].begin, plan.chunks[i].end);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(state.error_mutex);
                if (!state.failed.load(std::memory_order_acquire))
                {
                    state.failed_chunk = i;
                    try
                    {
                        throw;
                    }
                    catch (std::exception const& e)
                    {
                        state.failure_reason = e.what();
                    }
                    catch (...)
                    {
                        state.failure_reason = "unknown exception";
                    }
                    state.failed.store(true, std::memory_order_release);
                }
                return;
            }
        }
    };

    std::uint64_t const runner_count =
        std::min<std::uint64_t>(plan.cores, plan.chunks.size());
    std::vector<std::future<void>> joins;
    joins.reserve(static_cast<std::size_t>(runner_count));
    for (std::uint64_t r = 0; r < runner_count; ++r)
        joins.push_back(pool.submit(runner));
    for (auto& join : joins)
        join.wait();

    report.wall_time = std::chrono::duration_cast<nanos>(clock::now() - begin);
    if (state.failed.load(std::memory_order_acquire))
    {
        report.complete = false;
        throw chunk_execution_error(state.failed_chunk,
            plan.chunks[static_cast<std::size_t>(state.failed_chunk)],
            state.failure_reason, report);
    }
    return report;
}

}    // namespace adaptix
