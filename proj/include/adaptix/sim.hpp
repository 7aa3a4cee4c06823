// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/overhead_model.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

namespace adaptix {

/// One simulated invocation: cost parameters plus the configuration whose
/// makespan is wanted.
struct sim_config
{
    real_nanos t0{0.0};
    real_nanos t_iter{0.0};
    std::uint64_t n_elements = 0;
    unsigned cores = 1;
    std::uint64_t chunk_size = 1;
};

/// Best configuration found by exhaustive search.
struct best_config
{
    unsigned cores = 1;
    std::uint64_t chunk_size = 1;
    real_nanos makespan{0.0};
};

namespace detail {

    inline void validate(sim_config const& config)
    {
        if (!(config.t0.count() > 0.0) || !(config.t_iter.count() > 0.0))
            throw std::invalid_argument("sim_config: t0 and t_iter must be positive");
        if (config.n_elements < 1 || config.cores < 1 || config.chunk_size < 1)
            throw std::invalid_argument("sim_config: counts must be positive");
        if (config.chunk_size > config.n_elements)
            throw std::invalid_argument("sim_config: chunk_size exceeds n_elements");
    }

}    // namespace detail

///////////////////////////////////////////////////////////////////////////
/// Makespan of a chunked invocation under the overhead-law cost model.
///
/// One core runs the loop undisturbed: makespan = n * t_iter, no overhead.
/// Two or more cores pay the constant overhead t0 once, and the chunks
/// (each costing length * t_iter) are list-scheduled in index order onto
/// the earliest-available core, mirroring the executor's shared chunk
/// cursor. Per-chunk dispatch is free in this model.
inline real_nanos simulate(sim_config const& config)
{
    detail::validate(config);

    if (config.cores == 1)
        return real_nanos(
            static_cast<double>(config.n_elements) * config.t_iter.count());

    std::priority_queue<double, std::vector<double>, std::greater<double>> finish;
    for (unsigned c = 0; c < config.cores; ++c)
        finish.push(0.0);

    double makespan = 0.0;
    for (std::uint64_t lo = 0; lo < config.n_elements; lo += config.chunk_size)
    {
        std::uint64_t const len = std::min(config.chunk_size, config.n_elements - lo);
        double t = finish.top();
        finish.pop();
        t += static_cast<double>(len) * config.t_iter.count();
        makespan = std::max(makespan, t);
        finish.push(t);
    }
    return real_nanos(config.t0.count() + makespan);
}

///////////////////////////////////////////////////////////////////////////
/// Brute-force the best (cores, chunk_size) over cores in [1, max_cores].
///
/// For small inputs (n <= 512) every chunk size in [1, n] is tried; for
/// larger inputs the candidates are the chunk sizes induced by chunk counts
/// 1 .. max_cores * 16. Ties are broken toward fewer cores, then larger
/// chunks.
inline best_config exhaustive_best(
    real_nanos t0, real_nanos t_iter, std::uint64_t n_elements, unsigned max_cores)
{
    if (max_cores < 1)
        throw std::invalid_argument("exhaustive_best: max_cores must be >= 1");

    best_config best;
    bool have_best = false;
    std::vector<std::uint64_t> candidates;

    for (unsigned cores = 1; cores <= max_cores; ++cores)
    {
        candidates.clear();
        if (cores == 1)
        {
            // chunking is irrelevant on one core; the largest chunk stands in
            candidates.push_back(n_elements);
        }
        else if (n_elements <= 512)
        {
            for (std::uint64_t size = n_elements; size >= 1; --size)
                candidates.push_back(size);
        }
        else
        {
            std::set<std::uint64_t, std::greater<std::uint64_t>> grid;
            for (std::uint64_t k = 1; k <= std::uint64_t(max_cores) * 16; ++k)
                grid.insert(detail::ceil_div(n_elements, k));
            candidates.assign(grid.begin(), grid.end());
        }

        for (std::uint64_t size : candidates)
        {
            auto const makespan =
                simulate(sim_config{t0, t_iter, n_elements, cores, size});
            if (!have_best || makespan < best.makespan)
            {
                best = best_config{cores, size, makespan};
                have_best = true;
            }
        }
    }
    return best;
}

}    // namespace adaptix
