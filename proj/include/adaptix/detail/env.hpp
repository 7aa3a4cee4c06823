// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <optional>
#include <string>

namespace adaptix::detail {

// Malformed values are treated as unset rather than as errors; environment
// overrides are a test/benchmark facility, not a primary interface.

inline std::optional<unsigned long long> env_u64(char const* name)
{
    char const* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0')
        return std::nullopt;
    char* end = nullptr;
    unsigned long long const value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        return std::nullopt;
    return value;
}

inline std::optional<double> env_f64(char const* name)
{
    char const* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0')
        return std::nullopt;
    char* end = nullptr;
    double const value = std::strtod(raw, &end);
    if (end == raw || *end != '\0')
        return std::nullopt;
    return value;
}

}    // namespace adaptix::detail
