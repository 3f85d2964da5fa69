// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holobundle {

enum class ErrorCode {
  DimensionMismatch,
  ZeroNorm,
  DomainBoundary,
  TruncationTooSmall,
  DegenerateMetric,
  AmplitudeVanishes,
  AmplitudeVanishesOnPath,
  NonConvergent,
  NotRaySpaceFamily,
  NotNormalized,
  AntipodalRays,
  IdenticalRays,
  SingularPoint,
  StepTooLarge,
  ChartEscape,
  OpenPath,
  ConfigInvalid,
  InvalidArgument,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an amplitude vanishes along a path; carries the path parameter.
class PathSingularity : public Error {
 public:
  PathSingularity(double s, double p);

  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] double p() const noexcept { return p_; }

 private:
  double s_;
  double p_;
};

}  // namespace holobundle
