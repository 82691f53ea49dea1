// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace shardflow {

enum class ErrorKind {
  InvalidArgument,
  DegenerateData,
  NonConvergence,
  InconsistentPartition,
  OverlappingShards,
  GridTooCoarse,
  InvalidSeed,
  Timeout,
  ShapeNotInterior,
  Domain,
  Parse,
  Io,
};

const char *to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace shardflow
