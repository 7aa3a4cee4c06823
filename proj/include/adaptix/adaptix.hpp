// Copyright 2026 Adaptix Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <adaptix/algorithms.hpp>
#include <adaptix/bench.hpp>
#include <adaptix/calibration.hpp>
#include <adaptix/estimates.hpp>
#include <adaptix/execution_policy.hpp>
#include <adaptix/overhead_model.hpp>
#include <adaptix/schedule.hpp>
#include <adaptix/sim.hpp>
#include <adaptix/worker_pool.hpp>
