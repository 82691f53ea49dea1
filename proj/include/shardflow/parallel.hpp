// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace shardflow {

/// Worker count for internal loops. Defaults to SHARDFLOW_THREADS when set,
/// otherwise the hardware concurrency.
std::size_t thread_count();
/// Overrides the worker count; 0 restores the default.
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n). Each index is handled exactly once and
/// results must be written to per-index storage, so output does not depend
/// on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace shardflow
