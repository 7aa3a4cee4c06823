// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/execution_policy.hpp>
#include <adaptix/schedule.hpp>
#include <adaptix/worker_pool.hpp>

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>

namespace adaptix {

/// Wrap a per-index callable into a range loop body.
template <typename F>
loop_body per_index(F f)
{
    return [f = std::move(f)](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i)
            f(i);
    };
}

///////////////////////////////////////////////////////////////////////////
/// Run a loop body over [0, count) under the given policy.
///
/// The policy's measurement (if any) executes a sequential prefix of the
/// index space; the planned phase covers the rest, so every index runs
/// exactly once. The report's wall time spans planning and execution, which
/// is what a caller of the whole algorithm observes.
inline execution_report par_for_each(execution_policy& policy, worker_pool& pool,
    std::uint64_t count, loop_body body)
{
    using clock = std::chrono::steady_clock;

    if (count < 1)
        throw std::invalid_argument("par_for_each: count must be >= 1");

    auto const begin = clock::now();
    auto const resolved = plan(policy, pool, body, count);
    auto report = execute(resolved, pool, body);
    report.wall_time = std::chrono::duration_cast<nanos>(clock::now() - begin);
    return report;
}

/// out[i] = f(in[i]) for every i.
template <typename T, typename U, typename F>
execution_report par_transform(execution_policy& policy, worker_pool& pool,
    std::span<T const> in, std::span<U> out, F f)
{
    if (in.size() != out.size())
        throw std::invalid_argument("par_transform: input/output lengths differ");
    if (in.empty())
        throw std::invalid_argument("par_transform: empty input");
    return par_for_each(policy, pool, in.size(),
        [in, out, f](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t i = lo; i < hi; ++i)
                out[i] = f(in[i]);
        });
}

///////////////////////////////////////////////////////////////////////////
/// out[0] = in[0]; out[i] = in[i] - in[i-1] for i >= 1.
///
/// Expressed as an index-wise map that reads one read-only neighbor, so
/// chunks are independent and the parallel result is identical to the
/// sequential one, element by element. Input and output must be distinct
/// storage.
template <typename T>
execution_report par_adjacent_difference(execution_policy& policy,
    worker_pool& pool, std::span<T const> in, std::span<T> out)
{
    if (in.size() != out.size())
        throw std::invalid_argument(
            "par_adjacent_difference: input/output lengths differ");
    if (in.empty())
        throw std::invalid_argument("par_adjacent_difference: empty input");
    if (static_cast<void const*>(in.data()) < static_cast<void const*>(out.data() + out.size()) &&
        static_cast<void const*>(out.data()) < static_cast<void const*>(in.data() + in.size()))
        throw std::invalid_argument(
            "par_adjacent_difference: input and output overlap");

    return par_for_each(policy, pool, in.size(),
        [in, out](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t i = lo;
            if (i == 0)
            {
                out[0] = in[0];
                ++i;
            }
            for (; i < hi; ++i)
                out[i] = in[i] - in[i - 1];
        });
}

///////////////////////////////////////////////////////////////////////////
/// Deterministic compute-bound kernel: a dependent multiply-add chain of
/// the given length, seeded from the index. The chain cannot be reordered
/// or folded away by the optimizer, so per-element cost is uniform and
/// scales linearly with units.
inline double artificial_work_kernel(std::uint64_t index, std::uint64_t units) noexcept
{
    double x = 0.5 + 1.0e-4 * static_cast<double>(index & 0x1fff);
    for (std::uint64_t k = 0; k < units; ++k)
        x = x * 1.0000000001 + 1.0e-12;
    return x;
}

/// Loop body running the kernel for every index and storing the result, so
/// the work is observable and cannot be eliminated. The output span must
/// outlive the body and have room for every index the body is run on.
inline loop_body artificial_work_body(std::uint64_t units, std::span<double> out)
{
    if (units < 1)
        throw std::invalid_argument("artificial_work_body: units must be >= 1");
    return [units, out](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i)
            out[i] = artificial_work_kernel(i, units);
    };
}

}    // namespace adaptix
