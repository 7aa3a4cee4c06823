// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

// Minimal tour: run adjacent-difference under the default and the adaptive
// policy for a small and a large input, and show what each policy decided.

#include <adaptix/adaptix.hpp>

#include <cstdio>
#include <span>
#include <vector>

namespace {

void run_one(adaptix::worker_pool& pool, adaptix::execution_policy& policy,
    char const* name, std::uint64_t n)
{
    std::vector<double> in(n, 1.0);
    for (std::size_t i = 0; i < in.size(); ++i)
        in[i] = 0.25 * static_cast<double>(i % 97);
    std::vector<double> out(n);

    auto const report = adaptix::par_adjacent_difference<double>(
        policy, pool, std::span<double const>(in), std::span<double>(out));

    std::printf("%-8s n=%-9llu cores=%-3u chunks=%-4llu %s wall=%lld ns\n",
        name, static_cast<unsigned long long>(n), report.cores,
        static_cast<unsigned long long>(report.chunk_count),
        report.sequential ? "sequential" : "parallel  ",
        static_cast<long long>(report.wall_time.count()));
}

}    // namespace

int main()
{
    adaptix::worker_pool pool;
    std::printf("pool: %u workers\n", pool.hardware_cores());

    auto const overhead = adaptix::acquire_overhead(pool);
    std::printf("measured task overhead: %lld ns (IQR %lld ns, %llu samples)\n",
        static_cast<long long>(overhead.t0.count()),
        static_cast<long long>(overhead.dispersion.count()),
        static_cast<unsigned long long>(overhead.samples));

    for (std::uint64_t n : {std::uint64_t(64), std::uint64_t(1) << 22})
    {
        adaptix::default_policy fixed;
        run_one(pool, fixed, "default", n);

        // one adaptive instance per workload; it measures once, then reuses
        adaptix::adaptive_policy acc(pool);
        run_one(pool, acc, "adaptive", n);
    }
    return 0;
}
