// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/calibration.hpp>
#include <adaptix/detail/env.hpp>
#include <adaptix/estimates.hpp>
#include <adaptix/overhead_model.hpp>
#include <adaptix/worker_pool.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace adaptix {

/// User-supplied loop body. Invoked with half-open index ranges [lo, hi);
/// distinct indices must carry no data dependence on each other so that
/// disjoint ranges can run concurrently.
using loop_body = std::function<void(std::uint64_t, std::uint64_t)>;

/// Result of the measurement hook. prefix_consumed is the number of leading
/// indices the hook executed to obtain the estimate (zero on a cache hit);
/// the planner excludes them from the parallel phase so that no index runs
/// twice.
struct iteration_measurement
{
    iteration_estimate estimate;
    std::uint64_t prefix_consumed = 0;
};

///////////////////////////////////////////////////////////////////////////
/// The three customization points every parallel algorithm consults, in
/// this order: measure the loop body, pick the worker count, pick the chunk
/// size. Implementations must return a worker count in [1, hardware_cores]
/// and a chunk size in [1, count].
class execution_policy
{
public:
    virtual ~execution_policy() = default;

    virtual iteration_measurement measure_iteration_hook(
        worker_pool& pool, loop_body const& body, std::uint64_t count) = 0;

    virtual unsigned processing_units_count(worker_pool& pool,
        iteration_estimate const& iteration, std::uint64_t count) = 0;

    virtual std::uint64_t get_chunk_size(worker_pool& pool,
        iteration_estimate const& iteration, unsigned cores,
        std::uint64_t count) = 0;
};

///////////////////////////////////////////////////////////////////////////
/// Baseline behavior: no measurement, all available workers, the work split
/// into one equal chunk per worker.
class default_policy final : public execution_policy
{
public:
    iteration_measurement measure_iteration_hook(
        worker_pool&, loop_body const&, std::uint64_t) override
    {
        return {iteration_estimate{real_nanos(0.0), 1, false, true}, 0};
    }

    unsigned processing_units_count(
        worker_pool& pool, iteration_estimate const&, std::uint64_t) override
    {
        return pool.hardware_cores();
    }

    std::uint64_t get_chunk_size(worker_pool&, iteration_estimate const&,
        unsigned cores, std::uint64_t count) override
    {
        return std::max<std::uint64_t>(1, detail::ceil_div(count, cores));
    }
};

///////////////////////////////////////////////////////////////////////////
/// Fixed configuration: a requested worker count (clamped to the pool) and
/// a fixed chunks-per-core ratio. This is the equivalent of handing a
/// thread count and a static chunking directive to the runtime by hand, and
/// serves as the comparison arm in benchmarks.
class static_policy final : public execution_policy
{
public:
    explicit static_policy(unsigned cores, std::uint64_t chunks_per_core = 1)
      : cores_(cores)
      , chunks_per_core_(chunks_per_core)
    {
        if (cores_ < 1)
            throw std::invalid_argument("static_policy: cores must be >= 1");
        if (chunks_per_core_ < 1)
            throw std::invalid_argument("static_policy: chunks_per_core must be >= 1");
    }

    unsigned requested_cores() const noexcept { return cores_; }
    std::uint64_t chunks_per_core() const noexcept { return chunks_per_core_; }

    iteration_measurement measure_iteration_hook(
        worker_pool&, loop_body const&, std::uint64_t) override
    {
        return {iteration_estimate{real_nanos(0.0), 1, false, true}, 0};
    }

    unsigned processing_units_count(
        worker_pool& pool, iteration_estimate const&, std::uint64_t) override
    {
        return std::min(cores_, pool.hardware_cores());
    }

    std::uint64_t get_chunk_size(worker_pool&, iteration_estimate const&,
        unsigned cores, std::uint64_t count) override
    {
        return std::clamp<std::uint64_t>(
            detail::ceil_div(count, static_cast<std::uint64_t>(cores) * chunks_per_core_),
            1, count);
    }

private:
    unsigned cores_;
    std::uint64_t chunks_per_core_;
};

///////////////////////////////////////////////////////////////////////////
/// Adaptive core and chunk selection.
///
/// The policy measures the loop body once per workload, derives the total
/// single-worker time, and solves the overhead model for the worker count
/// that preserves the efficiency target (clamped to the machine). The chunk
/// size spreads the elements as chunks_per_core chunks over each selected
/// worker and is floored by the minimum work per chunk the model demands.
///
/// The iteration estimate is cached inside the policy object, so one
/// instance should be held per invocation site / workload. Instances are
/// not safe for concurrent planning; use one per planning thread.
///
/// Environment overrides (reproducible tests, simulation):
///   ADAPTIX_T0_NS     scheduling overhead in integer nanoseconds
///   ADAPTIX_TITER_NS  per-element time in (possibly fractional) nanoseconds
class adaptive_policy final : public execution_policy
{
public:
    /// Build from an already known overhead estimate.
    explicit adaptive_policy(overhead_estimate overhead,
        double efficiency_target = 0.95, std::uint64_t chunks_per_core = 8)
      : overhead_(overhead)
      , efficiency_target_(efficiency_target)
      , chunks_per_core_(chunks_per_core)
    {
        if (!(overhead_.t0 > nanos(0)))
            throw std::invalid_argument("adaptive_policy: overhead t0 must be positive");
        if (!(efficiency_target_ > 0.0 && efficiency_target_ < 1.0))
            throw std::invalid_argument(
                "adaptive_policy: efficiency_target must lie in (0, 1)");
        if (chunks_per_core_ < 1)
            throw std::invalid_argument("adaptive_policy: chunks_per_core must be >= 1");
    }

    /// Build by acquiring the overhead from the pool (environment override,
    /// cached value, or a fresh measurement, in that order).
    explicit adaptive_policy(worker_pool& pool, double efficiency_target = 0.95,
        std::uint64_t chunks_per_core = 8)
      : adaptive_policy(acquire_overhead(pool), efficiency_target, chunks_per_core)
    {
    }

    double efficiency_target() const noexcept { return efficiency_target_; }
    std::uint64_t chunks_per_core() const noexcept { return chunks_per_core_; }
    overhead_estimate overhead() const noexcept { return overhead_; }

    std::optional<iteration_estimate> cached_iteration() const { return cached_iteration_; }

    /// Pre-seed the per-workload estimate; no prefix will be consumed.
    void prime_iteration(iteration_estimate estimate) { cached_iteration_ = estimate; }

    /// Forget the cached estimate, e.g. when reusing the policy object for
    /// a different workload.
    void reset_iteration() { cached_iteration_.reset(); }

    /// Number of prefix indices the first measurement may execute before
    /// doubling kicks in. Default 16.
    void measurement_budget(std::uint64_t budget)
    {
        if (budget < 1)
            throw std::invalid_argument("adaptive_policy: budget must be >= 1");
        budget_ = budget;
    }

    iteration_measurement measure_iteration_hook(
        worker_pool&, loop_body const& body, std::uint64_t count) override
    {
        if (auto t = detail::env_f64("ADAPTIX_TITER_NS"); t && *t >= 0.0)
        {
            iteration_estimate est{real_nanos(*t), 1, true, false};
            cached_iteration_ = est;
            return {est, 0};
        }
        if (cached_iteration_)
            return {*cached_iteration_, 0};
        auto const est = measure_iteration(body, count, budget_);
        cached_iteration_ = est;
        return {est, est.sampled_iterations};
    }

    unsigned processing_units_count(worker_pool& pool,
        iteration_estimate const& iteration, std::uint64_t count) override
    {
        auto const rec = optimal_cores(params_for(iteration, count));
        if (rec.sequential)
            return 1;
        return static_cast<unsigned>(std::min<std::uint64_t>(
            rec.n_effective, pool.hardware_cores()));
    }

    std::uint64_t get_chunk_size(worker_pool&, iteration_estimate const& iteration,
        unsigned cores, std::uint64_t count) override
    {
        std::uint64_t size = chunk_size(count, cores, chunks_per_core_);
        if (iteration.t_iter.count() > 0.0)
        {
            // Minimum work per chunk, converted to elements.
            auto const t_m = min_chunk_time(params_for(iteration, count), cores);
            double const elems = std::ceil(t_m.count() / iteration.t_iter.count());
            if (elems > static_cast<double>(size))
                size = static_cast<std::uint64_t>(elems);
        }
        return std::clamp<std::uint64_t>(size, 1, count);
    }

private:
    model_params params_for(iteration_estimate const& iteration, std::uint64_t count) const
    {
        model_params params;
        params.t1 = total_time(iteration, count);
        params.t0 = std::chrono::duration_cast<real_nanos>(overhead_.t0);
        params.efficiency_target = efficiency_target_;
        params.chunks_per_core = chunks_per_core_;
        return params;
    }

    overhead_estimate overhead_;
    double efficiency_target_;
    std::uint64_t chunks_per_core_;
    std::uint64_t budget_ = 16;
    std::optional<iteration_estimate> cached_iteration_;
};

}    // namespace adaptix
