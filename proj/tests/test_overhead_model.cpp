// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#include <adaptix/overhead_model.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace adaptix;
using Catch::Matchers::WithinRel;

namespace {

model_params params_ns(double t1, double t0, double e = 0.95, std::uint64_t c = 8)
{
    return model_params{real_nanos(t1), real_nanos(t0), e, c};
}

double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
    return std::exp(dist(rng));
}

}    // namespace

TEST_CASE("predicted parallel time follows the overhead law", "[model]")
{
    CHECK_THAT(predicted_parallel_time(params_ns(10e9, 1e9), 2).count(),
        WithinRel(6e9, 1e-12));
    CHECK_THAT(predicted_parallel_time(params_ns(190e3, 1e3), 10).count(),
        WithinRel(20e3, 1e-12));
    // zero work: pure overhead
    CHECK_THAT(predicted_parallel_time(params_ns(0.0, 1e9), 4).count(),
        WithinRel(1e9, 1e-12));

    CHECK_THROWS_AS(predicted_parallel_time(params_ns(10, 1), 1), std::domain_error);
    CHECK_THROWS_AS(predicted_parallel_time(params_ns(10, 1), 0), std::domain_error);
    CHECK_THROWS_AS(predicted_parallel_time(params_ns(10, 0), 2), std::invalid_argument);
}

TEST_CASE("speedup matches hand values", "[model]")
{
    CHECK_THAT(speedup(params_ns(190e3, 1e3), 2), WithinRel(190.0 / 96.0, 1e-12));
    // overhead dominates: slowdown below one
    CHECK_THAT(speedup(params_ns(10e9, 10e9), 2), WithinRel(10.0 / 15.0, 1e-12));

    CHECK_THROWS_AS(speedup(params_ns(0.0, 1e3), 2), std::domain_error);
    CHECK_THROWS_AS(speedup(params_ns(10, 1), 1), std::domain_error);
}

TEST_CASE("speedup is monotone in n and bounded by t1/t0", "[model][property]")
{
    std::mt19937_64 rng(0xfeed01);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto const p = params_ns(
            log_uniform(rng, 1.0, 1e12), log_uniform(rng, 1.0, 1e9));
        double const bound = p.t1.count() / p.t0.count();
        double prev = speedup(p, 2);
        CHECK(prev < bound);
        for (unsigned n = 3; n < 40; ++n)
        {
            double const s = speedup(p, n);
            CHECK(s > prev);
            CHECK(s < bound);
            prev = s;
        }
    }
}

TEST_CASE("fraction form agrees with the direct form", "[model]")
{
    CHECK_THAT(speedup_from_fraction(0.95, 19), WithinRel(9.5, 1e-12));
    CHECK_THAT(speedup_from_fraction(0.5, 2), WithinRel(2.0 / 3.0, 1e-12));

    // consistency identity: p = t1 / (t0 + t1)
    auto const p = params_ns(10e9, 1e9);
    CHECK_THAT(speedup_from_fraction(10.0 / 11.0, 2),
        WithinRel(speedup(p, 2), 1e-12));
    CHECK_THAT(speedup(p, 2), WithinRel(10.0 / 6.0, 1e-12));

    CHECK_THROWS_AS(speedup_from_fraction(0.0, 2), std::domain_error);
    CHECK_THROWS_AS(speedup_from_fraction(1.0, 2), std::domain_error);
    CHECK_THROWS_AS(speedup_from_fraction(0.5, 1), std::domain_error);
}

TEST_CASE("fraction form is consistent over random parameters", "[model][property]")
{
    std::mt19937_64 rng(0xfeed02);
    for (int trial = 0; trial < 1000; ++trial)
    {
        double const t1 = log_uniform(rng, 1.0, 1e12);
        double const t0 = log_uniform(rng, 1.0, 1e9);
        unsigned const n = std::uniform_int_distribution<unsigned>(2, 256)(rng);
        double const frac = t1 / (t0 + t1);
        CHECK_THAT(speedup_from_fraction(frac, n),
            WithinRel(speedup(params_ns(t1, t0), n), 1e-12));
    }
}

TEST_CASE("efficiency is speedup over n", "[model]")
{
    CHECK_THAT(efficiency(params_ns(10e9, 1e9), 2), WithinRel(10.0 / 12.0, 1e-12));
    // overhead vanishes relative to work: efficiency approaches one
    CHECK_THAT(efficiency(params_ns(1e18, 1.0), 4), WithinRel(1.0, 1e-9));
}

// The work-per-core anchor: handing each of n workers 19*t0 of work (i.e.
// t1 = n * 19 * t0) yields a 1.9x speedup on two workers and 95% efficiency.
// Note that t1 = 19*t0 alone is one core's worth of work: the model then
// recommends staying sequential.
TEST_CASE("the 95 percent efficiency anchor", "[model]")
{
    std::mt19937_64 rng(0xfeed03);
    for (int trial = 0; trial < 50; ++trial)
    {
        double const t0 = log_uniform(rng, 1.0, 1e9);

        auto const two_cores_worth = params_ns(2 * 19 * t0, t0);
        CHECK_THAT(speedup(two_cores_worth, 2), WithinRel(1.9, 1e-9));
        CHECK_THAT(efficiency(two_cores_worth, 2), WithinRel(0.95, 1e-9));
        CHECK_THAT(work_per_core_target(two_cores_worth).count(),
            WithinRel(19 * t0, 1e-9));
        CHECK_THAT(optimal_cores(two_cores_worth).n_real, WithinRel(2.0, 1e-9));

        auto const one_core_worth = params_ns(19 * t0, t0);
        CHECK_THAT(optimal_cores(one_core_worth).n_real, WithinRel(1.0, 1e-9));
        CHECK(optimal_cores(one_core_worth).sequential);
        CHECK_THAT(speedup(one_core_worth, 2), WithinRel(19.0 / 10.5, 1e-12));
        CHECK_THAT(efficiency(one_core_worth, 2), WithinRel(19.0 / 21.0, 1e-12));
    }
}

TEST_CASE("optimal cores solves the model", "[model]")
{
    auto const rec = optimal_cores(params_ns(190e3, 1e3));
    CHECK_THAT(rec.n_real, WithinRel(10.0, 1e-12));
    CHECK(rec.n_effective == 10);
    CHECK_FALSE(rec.sequential);

    auto const boundary = optimal_cores(params_ns(19e3, 1e3));
    CHECK_THAT(boundary.n_real, WithinRel(1.0, 1e-12));
    CHECK(boundary.sequential);
    CHECK(boundary.n_effective == 1);

    auto const half = optimal_cores(params_ns(10e9, 1e9, 0.5));
    CHECK_THAT(half.n_real, WithinRel(10.0, 1e-12));
    CHECK(half.n_effective == 10);

    // floor never overshoots the target
    auto const frac = optimal_cores(params_ns(199e3, 1e3));
    CHECK_THAT(frac.n_real, WithinRel(199.0 / 19.0, 1e-12));
    CHECK(frac.n_effective == 10);
}

TEST_CASE("effective cores are floored and flagged", "[model][property]")
{
    std::mt19937_64 rng(0xfeed04);
    for (int trial = 0; trial < 1000; ++trial)
    {
        auto const p = params_ns(log_uniform(rng, 1.0, 1e12),
            log_uniform(rng, 1.0, 1e9), std::uniform_real_distribution<double>(0.05, 0.99)(rng));
        auto const rec = optimal_cores(p);
        CHECK(rec.n_effective >= 1);
        if (rec.sequential)
        {
            CHECK(rec.n_real < 2.0);
            CHECK(rec.n_effective == 1);
        }
        else
        {
            CHECK(rec.n_effective >= 2);
            CHECK(static_cast<double>(rec.n_effective) <= rec.n_real);
            CHECK(rec.n_real < static_cast<double>(rec.n_effective) + 1.0);
        }
    }
}

TEST_CASE("efficiency round-trips through the real-valued optimum",
    "[model][property]")
{
    std::mt19937_64 rng(0xfeed05);
    int checked = 0;
    while (checked < 2000)
    {
        double const e = std::uniform_real_distribution<double>(0.02, 0.98)(rng);
        auto const p = params_ns(log_uniform(rng, 1.0, 1e12),
            log_uniform(rng, 1.0, 1e9), e);
        auto const rec = optimal_cores(p);
        if (rec.n_real < 2.0)
            continue;
        CHECK_THAT(efficiency_at(p, rec.n_real), WithinRel(e, 1e-9));
        ++checked;
    }
}

TEST_CASE("work per core target", "[model]")
{
    CHECK_THAT(work_per_core_target(params_ns(0, 1e3, 0.95)).count(),
        WithinRel(19e3, 1e-12));
    CHECK_THAT(work_per_core_target(params_ns(0, 1e3, 0.9)).count(),
        WithinRel(9e3, 1e-12));
    CHECK_THAT(work_per_core_target(params_ns(0, 0.5e6, 0.95)).count(),
        WithinRel(9.5e6, 1e-12));
}

TEST_CASE("cores from work equals the model optimum", "[model][property]")
{
    CHECK_THAT(cores_from_work(params_ns(190e3, 1e3)), WithinRel(10.0, 1e-12));
    CHECK_THAT(cores_from_work(params_ns(19e3, 1e3)), WithinRel(1.0, 1e-12));

    std::mt19937_64 rng(0xfeed06);
    for (int trial = 0; trial < 1000; ++trial)
    {
        auto const p = params_ns(log_uniform(rng, 1.0, 1e12),
            log_uniform(rng, 1.0, 1e9),
            std::uniform_real_distribution<double>(0.02, 0.98)(rng));
        CHECK_THAT(cores_from_work(p), WithinRel(optimal_cores(p).n_real, 1e-12));
    }
}

TEST_CASE("minimum chunk time", "[model]")
{
    CHECK_THAT(min_chunk_time(params_ns(190e3, 1e3), 10).count(),
        WithinRel(2.375e3, 1e-12));
    CHECK_THAT(min_chunk_time(params_ns(80e9, 1e3), 1).count(),
        WithinRel(10e9, 1e-12));
    // one chunk per core
    CHECK_THAT(min_chunk_time(params_ns(33e3, 1e3, 0.95, 1), 3).count(),
        WithinRel(11e3, 1e-12));
}

TEST_CASE("chunk size uses tight ceiling division", "[model]")
{
    CHECK(chunk_size(1'000'000, 10, 8) == 12'500);
    CHECK(chunk_size(100, 10, 8) == 2);
    CHECK(chunk_size(1, 40, 8) == 1);
    CHECK_THROWS_AS(chunk_size(0, 1, 1), std::invalid_argument);
}

TEST_CASE("chunk size ceiling is tight", "[model][property]")
{
    std::mt19937_64 rng(0xfeed07);
    for (int trial = 0; trial < 2000; ++trial)
    {
        std::uint64_t const n =
            std::uniform_int_distribution<std::uint64_t>(1, 1u << 22)(rng);
        std::uint64_t const n_c = std::uniform_int_distribution<std::uint64_t>(1, 64)(rng);
        std::uint64_t const c = std::uniform_int_distribution<std::uint64_t>(1, 16)(rng);

        std::uint64_t const size = chunk_size(n, n_c, c);
        std::uint64_t const chunk_count = (n + size - 1) / size;
        CHECK(chunk_count <= n_c * c);
        CHECK(size * chunk_count >= n);
        if (size > 1)
            CHECK((size - 1) * chunk_count < n);
    }
}
