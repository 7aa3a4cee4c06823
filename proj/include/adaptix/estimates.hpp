// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/overhead_model.hpp>

#include <cstdint>
#include <stdexcept>

namespace adaptix {

/// Calibrated per-task scheduling overhead: the median submit-to-completion
/// latency of an empty task on a warm worker pool. dispersion carries the
/// inter-quartile range of the samples as a stability indicator.
struct overhead_estimate
{
    nanos t0{0};
    std::uint64_t samples = 0;
    nanos dispersion{0};
};

/// Measured per-element cost of a loop body. sampled_iterations records how
/// many prefix indices were executed to obtain it; low_confidence is set
/// when the whole index space ran below the usable timer resolution.
struct iteration_estimate
{
    real_nanos t_iter{0.0};
    std::uint64_t sampled_iterations = 0;
    bool measured_once = false;
    bool low_confidence = false;
};

/// Total single-worker time for count elements: t_iter * count.
inline real_nanos total_time(iteration_estimate const& estimate, std::uint64_t count)
{
    if (count < 1)
        throw std::invalid_argument("total_time: count must be positive");
    if (!(estimate.t_iter.count() >= 0.0) || estimate.sampled_iterations < 1)
        throw std::invalid_argument("total_time: invalid iteration estimate");
    return real_nanos(estimate.t_iter.count() * static_cast<double>(count));
}

}    // namespace adaptix
