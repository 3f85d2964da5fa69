// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/error.hpp"

#include <sstream>

namespace holobundle {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::DomainBoundary: return "DomainBoundary";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::AmplitudeVanishes: return "AmplitudeVanishes";
    case ErrorCode::AmplitudeVanishesOnPath: return "AmplitudeVanishesOnPath";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotRaySpaceFamily: return "NotRaySpaceFamily";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::AntipodalRays: return "AntipodalRays";
    case ErrorCode::IdenticalRays: return "IdenticalRays";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ChartEscape: return "ChartEscape";
    case ErrorCode::OpenPath: return "OpenPath";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {
std::string describe_path_singularity(double s, double p) {
  std::ostringstream os;
  os << "amplitude vanishes on path at s = " << s << " (p = " << p << ")";
  return os.str();
}
}  // namespace

PathSingularity::PathSingularity(double s, double p)
    : Error(ErrorCode::AmplitudeVanishesOnPath, describe_path_singularity(s, p)), s_(s), p_(p) {}

}  // namespace holobundle
