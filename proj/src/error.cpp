// Copyright 2026 The shardflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "shardflow/error.hpp"

namespace shardflow {

const char *to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InconsistentPartition: return "InconsistentPartition";
    case ErrorKind::OverlappingShards: return "OverlappingShards";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::InvalidSeed: return "InvalidSeed";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::ShapeNotInterior: return "ShapeNotInterior";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace shardflow
