// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/algorithms.hpp>
#include <adaptix/execution_policy.hpp>
#include <adaptix/schedule.hpp>
#include <adaptix/worker_pool.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adaptix {

enum class workload_kind
{
    adjacent_difference,
    artificial_work
};

enum class policy_kind
{
    sequential,
    static_cfg,
    adaptive
};

inline char const* to_string(workload_kind w)
{
    return w == workload_kind::adjacent_difference ? "adjacent_difference"
                                                   : "artificial_work";
}

inline char const* to_string(policy_kind p)
{
    switch (p)
    {
    case policy_kind::sequential:
        return "sequential";
    case policy_kind::static_cfg:
        return "static";
    default:
        return "adaptive";
    }
}

/// One sweep cell. cores is the requested arm for static rows, one for
/// sequential rows, and the worker count actually used (read back from the
/// execution report) for adaptive rows.
struct benchmark_record
{
    workload_kind workload = workload_kind::adjacent_difference;
    std::uint64_t n_elements = 0;
    policy_kind policy = policy_kind::sequential;
    unsigned cores = 1;
    std::uint64_t chunks_per_core = 1;
    std::uint64_t repetitions = 1;
    nanos mean_time{0};
    double speedup = 1.0;
};

/// What to sweep. Sizes, core arms and chunk arms are deduplicated and
/// sorted so that the emitted records have a reproducible order.
struct sweep_spec
{
    workload_kind workload = workload_kind::adjacent_difference;
    std::vector<std::uint64_t> sizes;
    std::vector<unsigned> core_arms;
    std::vector<std::uint64_t> chunk_arms{1};
    bool adaptive = false;
    std::uint64_t repetitions = 50;
    std::uint64_t work_units = 1000;
    double adaptive_efficiency = 0.95;
    std::uint64_t adaptive_chunks_per_core = 8;
};

namespace detail {

    /// Deterministic input data; identical across runs and machines.
    inline std::vector<double> make_input(std::uint64_t n, std::uint64_t salt = 0)
    {
        std::mt19937_64 rng(0x5eedf00d600dd1ceULL ^ salt);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        std::vector<double> data(static_cast<std::size_t>(n));
        for (auto& value : data)
            value = dist(rng);
        return data;
    }

    struct cell_timing
    {
        nanos mean{0};
        std::vector<nanos> raw;
    };

    /// One warm-up run (dropped) followed by `repetitions` timed runs.
    template <typename Run>
    cell_timing time_cell(Run&& run, std::uint64_t repetitions)
    {
        using clock = std::chrono::steady_clock;
        cell_timing timing;
        timing.raw.reserve(static_cast<std::size_t>(repetitions));
        run();
        std::int64_t total = 0;
        for (std::uint64_t rep = 0; rep < repetitions; ++rep)
        {
            auto const begin = clock::now();
            run();
            auto const elapsed = std::chrono::duration_cast<nanos>(clock::now() - begin);
            timing.raw.push_back(elapsed);
            total += elapsed.count();
        }
        timing.mean = nanos(total / static_cast<std::int64_t>(repetitions));
        return timing;
    }

    inline void dump_raw(std::ostream* raw, benchmark_record const& rec,
        std::vector<nanos> const& samples)
    {
        if (raw == nullptr)
            return;
        for (std::size_t i = 0; i < samples.size(); ++i)
            *raw << to_string(rec.workload) << ',' << rec.n_elements << ','
                 << to_string(rec.policy) << ',' << rec.cores << ','
                 << rec.chunks_per_core << ',' << i << ','
                 << samples[i].count() << '\n';
    }

}    // namespace detail

///////////////////////////////////////////////////////////////////////////
/// Run the sweep: for every size, a sequential baseline, then every
/// (cores, chunks-per-core) static arm, then the adaptive arm. Cells run
/// one at a time; the only parallelism is the scheduler under test. Static
/// arms requesting more workers than the pool has are skipped with a
/// warning on stderr. Pass a stream to receive per-repetition raw timings.
inline std::vector<benchmark_record> run_sweep(
    sweep_spec const& spec, worker_pool& pool, std::ostream* raw = nullptr)
{
    if (spec.sizes.empty())
        throw std::invalid_argument("run_sweep: no sizes given");
    if (spec.repetitions < 1)
        throw std::invalid_argument("run_sweep: repetitions must be >= 1");

    auto sizes = spec.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    auto core_arms = spec.core_arms;
    std::sort(core_arms.begin(), core_arms.end());
    core_arms.erase(std::unique(core_arms.begin(), core_arms.end()), core_arms.end());
    auto chunk_arms = spec.chunk_arms;
    std::sort(chunk_arms.begin(), chunk_arms.end());
    chunk_arms.erase(std::unique(chunk_arms.begin(), chunk_arms.end()), chunk_arms.end());

    std::vector<benchmark_record> records;
    for (std::uint64_t n : sizes)
    {
        if (n < 1)
            throw std::invalid_argument("run_sweep: sizes must be positive");

        // workload state for this size
        std::vector<double> input;
        std::vector<double> output(static_cast<std::size_t>(n));
        loop_body body;
        if (spec.workload == workload_kind::adjacent_difference)
        {
            input = detail::make_input(n);
            std::span<double const> in(input);
            std::span<double> out(output);
            body = [in, out](std::uint64_t lo, std::uint64_t hi) {
                std::uint64_t i = lo;
                if (i == 0)
                {
                    out[0] = in[0];
                    ++i;
                }
                for (; i < hi; ++i)
                    out[i] = in[i] - in[i - 1];
            };
        }
        else
        {
            body = artificial_work_body(spec.work_units, std::span<double>(output));
        }

        // sequential baseline, always present
        auto const seq = detail::time_cell([&] { body(0, n); }, spec.repetitions);
        benchmark_record seq_rec{spec.workload, n, policy_kind::sequential, 1, 1,
            spec.repetitions, seq.mean, 1.0};
        detail::dump_raw(raw, seq_rec, seq.raw);
        records.push_back(seq_rec);
        double const seq_ns = static_cast<double>(seq.mean.count());

        for (unsigned cores : core_arms)
        {
            if (cores > pool.hardware_cores())
            {
                std::cerr << "run_sweep: skipping cores=" << cores
                          << " (pool has " << pool.hardware_cores()
                          << " workers)\n";
                continue;
            }
            for (std::uint64_t c : chunk_arms)
            {
                static_policy arm(cores, c);
                auto const timing = detail::time_cell(
                    [&] { par_for_each(arm, pool, n, body); }, spec.repetitions);
                benchmark_record rec{spec.workload, n, policy_kind::static_cfg,
                    cores, c, spec.repetitions, timing.mean,
                    seq_ns / static_cast<double>(timing.mean.count())};
                detail::dump_raw(raw, rec, timing.raw);
                records.push_back(rec);
            }
        }

        if (spec.adaptive)
        {
            adaptive_policy acc(
                pool, spec.adaptive_efficiency, spec.adaptive_chunks_per_core);
            unsigned used_cores = 1;
            auto const timing = detail::time_cell(
                [&] {
                    auto const report = par_for_each(acc, pool, n, body);
                    used_cores = report.cores;
                },
                spec.repetitions);
            benchmark_record rec{spec.workload, n, policy_kind::adaptive,
                used_cores, spec.adaptive_chunks_per_core, spec.repetitions,
                timing.mean, seq_ns / static_cast<double>(timing.mean.count())};
            detail::dump_raw(raw, rec, timing.raw);
            records.push_back(rec);
        }
    }
    return records;
}

///////////////////////////////////////////////////////////////////////////
/// CSV contract: fixed header, one row per record, durations as integer
/// nanoseconds, speedup with six decimals, '\n' line ends.
inline void emit_csv(std::span<benchmark_record const> records, std::ostream& os)
{
    if (records.empty())
        throw std::invalid_argument("emit_csv: no records");
    os << "workload,n_elements,policy,cores,chunks_per_core,repetitions,"
          "mean_time_ns,speedup\n";
    char speedup[32];
    for (auto const& rec : records)
    {
        std::snprintf(speedup, sizeof(speedup), "%.6f", rec.speedup);
        os << to_string(rec.workload) << ',' << rec.n_elements << ','
           << to_string(rec.policy) << ',' << rec.cores << ','
           << rec.chunks_per_core << ',' << rec.repetitions << ','
           << rec.mean_time.count() << ',' << speedup << '\n';
    }
}

inline void emit_csv(std::span<benchmark_record const> records, std::string const& path)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("emit_csv: cannot open " + path);
    emit_csv(records, file);
    file.flush();
    if (!file)
        throw std::runtime_error("emit_csv: write to " + path + " failed");
}

///////////////////////////////////////////////////////////////////////////
/// Size lists for the CLI: either a comma list ("1024,4096") or a geometric
/// range "a:b" / "a:b:ratio" (ratio defaults to 2, end inclusive).
inline std::vector<std::uint64_t> parse_sizes(std::string const& text)
{
    if (text.empty())
        throw std::invalid_argument("parse_sizes: empty size list");

    std::vector<std::uint64_t> sizes;
    if (text.find(':') != std::string::npos)
    {
        std::uint64_t lo = 0, hi = 0, ratio = 2;
        char const* p = text.c_str();
        char* end = nullptr;
        lo = std::strtoull(p, &end, 10);
        if (end == p || *end != ':')
            throw std::invalid_argument("parse_sizes: bad geometric range");
        p = end + 1;
        hi = std::strtoull(p, &end, 10);
        if (end == p)
            throw std::invalid_argument("parse_sizes: bad geometric range");
        if (*end == ':')
        {
            p = end + 1;
            ratio = std::strtoull(p, &end, 10);
            if (end == p)
                throw std::invalid_argument("parse_sizes: bad geometric ratio");
        }
        if (*end != '\0')
            throw std::invalid_argument("parse_sizes: trailing characters");
        if (lo < 1 || hi < lo || ratio < 2)
            throw std::invalid_argument("parse_sizes: need 1 <= a <= b and ratio >= 2");
        for (std::uint64_t n = lo; n <= hi; n *= ratio)
        {
            sizes.push_back(n);
            if (n > hi / ratio)    // overflow guard
                break;
        }
        return sizes;
    }

    std::size_t pos = 0;
    while (pos < text.size())
    {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos)
            next = text.size();
        std::string const token = text.substr(pos, next - pos);
        char* end = nullptr;
        std::uint64_t const value = std::strtoull(token.c_str(), &end, 10);
        if (end == token.c_str() || *end != '\0' || value < 1)
            throw std::invalid_argument("parse_sizes: bad size '" + token + "'");
        sizes.push_back(value);
        pos = next + 1;
    }
    if (sizes.empty())
        throw std::invalid_argument("parse_sizes: empty size list");
    return sizes;
}

}    // namespace adaptix
