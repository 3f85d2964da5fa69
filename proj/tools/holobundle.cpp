// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Builds a run config and a request from the flags
// and hands both to the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "holobundle/holobundle.h"

using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A JSON argument, or @file to read it from disk.
json json_arg(const std::string& text, const char* flag) {
  try {
    return json::parse(!text.empty() && text[0] == '@' ? read_file(text.substr(1)) : text);
  } catch (const json::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

struct Common {
  std::string family;
  std::string coords;
  std::string gauge;
  std::string config;
  std::string out;
  std::vector<std::string> tols;
  double q = 0.0;
  double h = 0.0;
  int order = 0;
  int points = 0;
  int threads = 0;
  unsigned long long seed = 0;
  bool analytic = false;
};

struct Request {
  std::string psi_f, path, mode = "phase", hamiltonian, psi0, start;
  double T = 0.0, dt = 0.0, length = 1.0, ds = 1e-3;
  int stride = 10, N = 2;
  long samples = 100000;
};

void add_common(CLI::App* sub, Common& c) {
  // -h would clash with --h.
  sub->set_help_flag("--help", "print this help message and exit");
  sub->add_option("--config", c.config, "JSON run config to start from");
  sub->add_option("--family", c.family, "builtin family (bloch, coherent, cpN) or a descriptor file");
  sub->add_option("--coords", c.coords, "cartesian or polar");
  sub->add_option("--gauge", c.gauge, "zero, or a JSON list of [re, im] linear gauge coefficients");
  sub->add_option("--q", c.q, "scale of the Fubini-Study normalization");
  sub->add_option("--h", c.h, "finite-difference step");
  sub->add_option("--order", c.order, "finite-difference order (2 or 4)");
  sub->add_flag("--analytic", c.analytic, "use holomorphic derivatives instead of finite differences");
  sub->add_option("--tol", c.tols, "override a check tolerance, NAME=VALUE")->take_all();
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--points", c.points, "random points per verify check");
  sub->add_option("--threads", c.threads, "worker threads (0 = all)");
  sub->add_option("--out", c.out, "directory for JSON and CSV output");
}

json build_config(const CLI::App* sub, const Common& c) {
  json j = c.config.empty() ? json::object() : json_arg("@" + c.config, "--config");
  if (sub->count("--family")) {
    if (std::filesystem::is_regular_file(c.family)) {
      j["family"] = json_arg("@" + c.family, "--family");
    } else {
      j["family"] = c.family;
    }
  }
  if (sub->count("--coords")) j["coordinates"] = c.coords;
  if (sub->count("--gauge")) {
    if (c.gauge == "zero") {
      j["gauge"] = {{"kind", "zero"}};
    } else {
      j["gauge"] = {{"kind", "holomorphic_linear"}, {"coefficients", json_arg(c.gauge, "--gauge")}};
    }
  }
  if (sub->count("--q")) j["q"] = c.q;
  if (!j.contains("scheme")) j["scheme"] = json::object();
  if (sub->count("--h")) j["scheme"]["h"] = c.h;
  if (sub->count("--order")) j["scheme"]["order"] = c.order;
  if (c.analytic) j["scheme"]["mode"] = "analytic";
  for (const auto& t : c.tols) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects NAME=VALUE, got '" + t + "'");
    try {
      j["tolerances"][t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--tol: bad value in '" + t + "'");
    }
  }
  if (sub->count("--seed")) j["seed"] = c.seed;
  if (sub->count("--points")) j["n_points"] = c.points;
  if (sub->count("--threads")) j["threads"] = c.threads;
  if (sub->count("--out")) j["out"] = c.out;
  return j;
}

json build_request(const std::string& name, const CLI::App* sub, const Request& r) {
  json j = json::object();
  if (!r.psi_f.empty()) j["psi_f"] = json_arg(r.psi_f, "--psi-f");
  if (name == "reconstruct") {
    if (!r.path.empty()) j["path"] = json_arg(r.path, "--path");
    j["mode"] = r.mode;
  } else if (name == "evolve") {
    if (!r.hamiltonian.empty()) j["hamiltonian"] = json_arg(r.hamiltonian, "--hamiltonian");
    if (!r.psi0.empty()) j["psi0"] = json_arg(r.psi0, "--psi0");
    if (sub->count("--T")) j["T"] = r.T;
    if (sub->count("--dt")) j["dt"] = r.dt;
  } else if (name == "flow") {
    if (!r.start.empty()) j["start"] = json_arg(r.start, "--start");
    j["arclength"] = r.length;
    j["ds"] = r.ds;
    j["stride"] = r.stride;
  } else if (name == "sample") {
    j["N"] = r.N;
    j["samples"] = r.samples;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transition amplitudes on holomorphic line bundles"};
  app.set_version_flag("--version", hb_version());
  app.require_subcommand(1);

  Common common;
  Request req;

  auto* verify = app.add_subcommand("verify", "check the geometric and amplitude identities at sample points");
  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild the amplitude phase or modulus along a path");
  auto* evolve = app.add_subcommand("evolve", "evolve a state and split its phase into dynamical and geometric parts");
  auto* flow = app.add_subcommand("flow", "integrate the phase flow from a start point");
  auto* sample = app.add_subcommand("sample", "estimate the mean transition probability over random rays");
  for (auto* sub : {verify, reconstruct, evolve, flow, sample}) add_common(sub, common);

  for (auto* sub : {reconstruct, evolve, flow, sample}) {
    sub->add_option("--psi-f", req.psi_f, "target state as JSON, e.g. {\"basis\":0}");
  }
  reconstruct->add_option("--path", req.path, "path as JSON")->required();
  reconstruct->add_option("--mode", req.mode, "phase or modulus")->check(CLI::IsMember({"phase", "modulus"}));
  evolve->add_option("--hamiltonian", req.hamiltonian, "Hamiltonian as JSON")->required();
  evolve->add_option("--psi0", req.psi0, "initial state as JSON")->required();
  evolve->add_option("--T", req.T, "duration");
  evolve->add_option("--dt", req.dt, "time step");
  flow->add_option("--start", req.start, "start point as a JSON list")->required();
  flow->add_option("--length", req.length, "arclength to integrate");
  flow->add_option("--ds", req.ds, "arclength step");
  flow->add_option("--stride", req.stride, "record every n-th step");
  sample->add_option("--N", req.N, "Hilbert space dimension");
  sample->add_option("--samples", req.samples, "number of random rays");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::string config_text, request_text;
  try {
    config_text = build_config(sub, common).dump();
    request_text = build_request(name, sub, req).dump();
  } catch (const UsageError& e) {
    std::fprintf(stderr, "holobundle: %s\n", e.what());
    return kExitUsage;
  }

  char* summary = nullptr;
  const hb_status status = hb_run_command(name.c_str(), config_text.c_str(), request_text.c_str(), &summary, nullptr);
  if (summary != nullptr) {
    std::cout << summary << "\n";
    hb_string_free(summary);
  }
  switch (status) {
    case HB_OK:
      return kExitPass;
    case HB_CHECK_FAILED:
      return kExitFail;
    case HB_ERR_CONFIG_INVALID:
    case HB_ERR_INVALID_ARGUMENT:
      std::fprintf(stderr, "holobundle: %s\n", hb_last_error());
      return kExitUsage;
    default:
      std::fprintf(stderr, "holobundle: %s\n", hb_last_error());
      return kExitFail;
  }
}
