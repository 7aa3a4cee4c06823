// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

// Benchmark sweep driver. Runs a sequential baseline plus static and
// adaptive arms over a size grid and writes one CSV row per cell.
//
//   bench --workload adjacent_difference --sizes 1024:16777216 \
//         --cores 2,4,8 --chunks-per-core 1,4,8 --adaptive \
//         --repetitions 50 --output sweep.csv
//
// Honors ADAPTIX_CORES (pool size) and ADAPTIX_T0_NS (overhead override).
// Exits 0 on success, 2 on bad arguments.

#include <adaptix/adaptix.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::vector<unsigned> to_unsigned(std::vector<std::uint64_t> const& values,
    char const* what)
{
    std::vector<unsigned> result;
    result.reserve(values.size());
    for (auto v : values)
    {
        if (v < 1 || v > 1u << 20)
            throw CLI::ValidationError(std::string(what) + " out of range");
        result.push_back(static_cast<unsigned>(v));
    }
    return result;
}

}    // namespace

int main(int argc, char** argv)
{
    CLI::App app{"adaptix benchmark sweeps: sequential vs. static vs. adaptive"};

    std::string workload_name;
    std::string sizes_text = "1024:16777216";
    std::vector<std::uint64_t> cores_list;
    std::vector<std::uint64_t> chunks_list{1};
    bool adaptive = false;
    std::uint64_t repetitions = 50;
    std::uint64_t work_units = 1000;
    std::string output_path;
    std::string raw_path;

    app.add_option("--workload", workload_name, "adjacent_difference | artificial_work")
        ->required()
        ->check(CLI::IsMember({"adjacent_difference", "artificial_work"}));
    app.add_option("--sizes", sizes_text,
        "comma list (\"1024,4096\") or geometric range \"a:b[:ratio]\"");
    app.add_option("--cores", cores_list, "static core arms (comma list)")
        ->delimiter(',');
    app.add_option("--chunks-per-core", chunks_list,
            "chunks-per-core arms for the static runs (comma list)")
        ->delimiter(',');
    app.add_flag("--adaptive", adaptive, "include the adaptive arm");
    app.add_option("--repetitions", repetitions, "timed runs per cell")
        ->check(CLI::Range(std::uint64_t(1), std::uint64_t(1'000'000)));
    app.add_option("--work-units", work_units,
            "kernel length per element for artificial_work")
        ->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 32));
    app.add_option("--output", output_path, "CSV output path")->required();
    app.add_option("--raw", raw_path, "optional per-repetition dump path");

    try
    {
        app.parse(argc, argv);

        adaptix::sweep_spec spec;
        spec.workload = workload_name == "adjacent_difference"
            ? adaptix::workload_kind::adjacent_difference
            : adaptix::workload_kind::artificial_work;
        spec.sizes = adaptix::parse_sizes(sizes_text);
        spec.core_arms = to_unsigned(cores_list, "--cores");
        spec.chunk_arms = chunks_list;
        for (auto c : spec.chunk_arms)
            if (c < 1)
                throw CLI::ValidationError("--chunks-per-core must be >= 1");
        spec.adaptive = adaptive;
        spec.repetitions = repetitions;
        spec.work_units = work_units;

        adaptix::worker_pool pool;
        std::cerr << "bench: pool with " << pool.hardware_cores()
                  << " workers\n";

        std::ofstream raw_file;
        std::ostream* raw = nullptr;
        if (!raw_path.empty())
        {
            raw_file.open(raw_path, std::ios::binary);
            if (!raw_file)
                throw CLI::ValidationError("--raw path is not writable");
            raw_file << "workload,n_elements,policy,cores,chunks_per_core,"
                        "rep,time_ns\n";
            raw = &raw_file;
        }

        auto const records = adaptix::run_sweep(spec, pool, raw);
        adaptix::emit_csv(
            std::span<adaptix::benchmark_record const>(records), output_path);
        std::cerr << "bench: wrote " << records.size() << " records to "
                  << output_path << "\n";
        return 0;
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e) == 0 ? 0 : 2;
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << "bench: " << e.what() << "\n";
        return 2;
    }
    catch (std::exception const& e)
    {
        std::cerr << "bench: " << e.what() << "\n";
        return 1;
    }
}
