// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace adaptix {

/// Integral nanoseconds; the unit of everything the calibration layer measures.
using nanos = std::chrono::nanoseconds;

/// Real-valued nanoseconds used for model arithmetic. Measured 64-bit tick
/// counts are converted to this type at the model boundary so that the math
/// below is free of timer-resolution artifacts.
using real_nanos = std::chrono::duration<double, std::nano>;

///////////////////////////////////////////////////////////////////////////
/// Cost-model inputs for one loop invocation.
///
/// The model assumes the loop parallelizes perfectly apart from a constant
/// overhead t0 that is charged only when parallelism is attempted:
///
///     predicted time on n workers = t1 / n + t0        (n >= 2)
///
/// t1 is the total single-worker time of the loop, efficiency_target is the
/// parallel efficiency the scheduler aims to preserve, and chunks_per_core
/// controls how many chunks each selected worker receives.
struct model_params
{
    real_nanos t1{0.0};
    real_nanos t0{0.0};
    double efficiency_target = 0.95;
    std::uint64_t chunks_per_core = 8;
};

/// Worker count suggested by the model. n_real is the unclamped real-valued
/// solution; n_effective is floored and never less than one. sequential is
/// set when even two workers cannot meet the efficiency target, i.e. when
/// n_real < 2.
struct core_recommendation
{
    double n_real = 0.0;
    std::uint64_t n_effective = 1;
    bool sequential = true;
};

namespace detail {

    inline void validate(model_params const& p)
    {
        if (!(p.t0.count() > 0.0))
            throw std::invalid_argument("model_params: t0 must be positive");
        if (!(p.t1.count() >= 0.0))
            throw std::invalid_argument("model_params: t1 must be non-negative");
        if (!(p.efficiency_target > 0.0 && p.efficiency_target < 1.0))
            throw std::invalid_argument(
                "model_params: efficiency_target must lie in (0, 1)");
        if (p.chunks_per_core < 1)
            throw std::invalid_argument(
                "model_params: chunks_per_core must be at least 1");
    }

    inline std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den)
    {
        return num / den + (num % den != 0 ? 1 : 0);
    }

}    // namespace detail

/// Predicted wall time of the loop on n workers: t1 / n + t0.
///
/// The relation is undefined at n = 1 because a sequential run pays no
/// dispatch overhead; callers wanting the sequential time should use t1
/// directly.
inline real_nanos predicted_parallel_time(model_params const& params, unsigned n)
{
    detail::validate(params);
    if (n < 2)
        throw std::domain_error(
            "predicted_parallel_time: the overhead law is invalid at N=1");
    return real_nanos(params.t1.count() / static_cast<double>(n)) + params.t0;
}

/// Speedup over the sequential run at real-valued worker count n.
/// Exposed separately from speedup() because the optimum returned by
/// optimal_cores() is real-valued.
inline double speedup_at(model_params const& params, double n)
{
    detail::validate(params);
    if (!(n >= 2.0))
        throw std::domain_error("speedup_at: requires n >= 2");
    if (!(params.t1.count() > 0.0))
        throw std::domain_error("speedup_at: undefined for t1 == 0");
    return params.t1.count() / (params.t1.count() / n + params.t0.count());
}

/// Speedup of the parallel run over the sequential one: t1 / (t1/n + t0).
///
/// Strictly increasing in n with supremum t1/t0; values below one mean the
/// overhead outweighs the parallel gain.
inline double speedup(model_params const& params, unsigned n)
{
    return speedup_at(params, static_cast<double>(n));
}

/// The same speedup expressed through a parallel fraction p in (0, 1),
/// comparable to the fixed-serial-fraction laws: p / (1 - p + p/n).
/// With p = t1 / (t0 + t1) this coincides with speedup().
inline double speedup_from_fraction(double p, unsigned n)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error(
            "speedup_from_fraction: parallel fraction must lie in (0, 1)");
    if (n < 2)
        throw std::domain_error("speedup_from_fraction: requires n >= 2");
    return p / (1.0 - p + p / static_cast<double>(n));
}

/// Parallel efficiency at real-valued worker count n: speedup / n.
inline double efficiency_at(model_params const& params, double n)
{
    return speedup_at(params, n) / n;
}

/// Parallel efficiency on n workers: speedup(n) / n = t1 / (n * t_n).
inline double efficiency(model_params const& params, unsigned n)
{
    return efficiency_at(params, static_cast<double>(n));
}

/// Solve the model for the worker count that hits the efficiency target:
///
///     n = ((1 - E) / E) * (t1 / t0)
///
/// The returned recommendation is unclamped; bounding by the machine's
/// worker count is the scheduler's job. sequential is set when n_real < 2.
inline core_recommendation optimal_cores(model_params const& params)
{
    detail::validate(params);
    double const e = params.efficiency_target;
    double const n_real =
        ((1.0 - e) / e) * (params.t1.count() / params.t0.count());
    core_recommendation rec;
    rec.n_real = n_real;
    rec.sequential = n_real < 2.0;
    rec.n_effective =
        rec.sequential ? 1 : static_cast<std::uint64_t>(std::floor(n_real));
    return rec;
}

/// Work each core should receive to sustain the efficiency target:
///
///     t_opt = (E / (1 - E)) * t0
///
/// At the default 95% target this is 19 * t0.
inline real_nanos work_per_core_target(model_params const& params)
{
    detail::validate(params);
    double const e = params.efficiency_target;
    return real_nanos((e / (1.0 - e)) * params.t0.count());
}

/// Worker count derived from the ideal work-per-core: t1 / t_opt.
/// Algebraically identical to optimal_cores().n_real.
inline double cores_from_work(model_params const& params)
{
    return params.t1.count() / work_per_core_target(params).count();
}

/// Minimum work one chunk must carry so that n_c cores receive at most
/// chunks_per_core chunks each: t_m = t1 / (n_c * C).
inline real_nanos min_chunk_time(model_params const& params, std::uint64_t n_c)
{
    detail::validate(params);
    if (n_c < 1)
        throw std::invalid_argument("min_chunk_time: n_c must be at least 1");
    return real_nanos(params.t1.count() /
        (static_cast<double>(n_c) * static_cast<double>(params.chunks_per_core)));
}

/// Elements per chunk for n_elements spread over n_c cores with c chunks per
/// core. Uses ceiling division with a floor of one element, which keeps the
/// resulting chunk count at or below n_c * c.
inline std::uint64_t chunk_size(
    std::uint64_t n_elements, std::uint64_t n_c, std::uint64_t c)
{
    if (n_elements < 1 || n_c < 1 || c < 1)
        throw std::invalid_argument("chunk_size: all arguments must be positive");
    std::uint64_t const sz = detail::ceil_div(n_elements, n_c * c);
    return sz < 1 ? 1 : sz;
}

}    // namespace adaptix
