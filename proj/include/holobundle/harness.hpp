// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "holobundle/section.hpp"

namespace holobundle {

/// Settings shared by every command. Serializes to JSON and back without loss.
struct RunConfig {
  std::string family = "bloch";   // builtin name, used when no descriptor is given
  std::string family_descriptor;  // JSON family descriptor, overrides `family`
  std::string coordinates = "cartesian";  // or "polar" (Bloch only)
  std::string gauge = "zero";             // or "holomorphic_linear"
  std::vector<cplx> gauge_coefficients;
  double q = 4.0;
  std::string scheme = "finite_difference";  // or "analytic"
  double h = 1e-4;
  int order = 4;
  std::map<std::string, double> tolerances;  // overrides of the default check tolerances
  std::uint64_t seed = 20260101;
  int n_points = 20;
  std::string out;  // output directory; empty writes nothing
  int threads = 0;  // 0 = hardware concurrency, capped by HOLOBUNDLE_THREADS

  [[nodiscard]] std::string to_json() const;
  // Throws ConfigInvalid on malformed or out-of-range settings.
  static RunConfig from_json(std::string_view text);
  void validate() const;
};

Context make_context(const RunConfig& config);

// Default tolerance of every named check.
const std::map<std::string, double>& default_tolerances();

struct CheckResult {
  std::string name;
  int points = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string status;  // "pass", "fail" or "skipped"
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  std::string config_hash;
  std::string version;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::string to_json(const RunConfig& config) const;
};

/// Output of a command: a JSON summary, an optional CSV trace and the exit code.
struct CommandResult {
  int exit_code = 0;
  std::string summary;
  std::string csv;
};

SuiteReport run_verify(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);

// request: {"psi_f": state, "path": path, "mode": "phase" | "modulus"}
CommandResult cmd_reconstruct(const RunConfig& config, std::string_view request);
// request: {"hamiltonian": {...}, "psi0": state, "psi_f": state, "dt": dt, "T": duration}
CommandResult cmd_evolve(const RunConfig& config, std::string_view request);
// request: {"psi_f": state, "start": [xi...], "arclength": L, "ds": ds, "stride": n}
CommandResult cmd_flow(const RunConfig& config, std::string_view request);
// request: {"N": dim, "samples": count, "psi_f": state}
CommandResult cmd_sample(const RunConfig& config, std::string_view request);

// Runs `command` (verify | reconstruct | evolve | flow | sample) and writes
// its outputs below config.out when set.
CommandResult run_command(std::string_view command, const RunConfig& config, std::string_view request);

// FNV-1a of the canonical config JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace holobundle
