// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the unit tests: random generators and closed forms that
// do not go through the library's own numerics.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>

#include "holobundle/error.hpp"
#include "holobundle/state.hpp"

namespace hbtest {

using holobundle::ChartPoint;
using holobundle::ComplexVector;
using holobundle::cplx;
using holobundle::ErrorCode;
using holobundle::RealVector;
using holobundle::StateVector;

inline constexpr double pi = std::numbers::pi;

template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const holobundle::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Hand-rolled generators. Each test seeds its own so failures replay.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  StateVector state(int n) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(normal(), normal());
    return StateVector(v / v.norm());
  }

  // Complex point in the polydisc |z^a| < r / sqrt(k).
  ComplexVector z(int k, double r) {
    ComplexVector out(k);
    for (int a = 0; a < k; ++a) out[a] = std::polar(r * std::sqrt(uniform(0.0, 1.0) / k), uniform(-pi, pi));
    return out;
  }

  ChartPoint xi(int k, double r) {
    const ComplexVector w = z(k, r);
    ChartPoint p(2 * k);
    for (int a = 0; a < k; ++a) {
      p[2 * a] = w[a].real();
      p[2 * a + 1] = w[a].imag();
    }
    return p;
  }

  // (theta, phi) away from the poles.
  ChartPoint angles(double margin = 0.3) {
    ChartPoint p(2);
    p << uniform(margin, pi - margin), uniform(-pi, pi);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline ChartPoint point(std::initializer_list<double> v) {
  ChartPoint p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

// Spin-1/2 closed forms on the unit sphere with q = 4.
namespace bloch {

inline StateVector ket(double theta, double phi) {
  return StateVector{cplx(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)};
}
inline StateVector up() { return StateVector{1.0, 0.0}; }
inline StateVector down() { return StateVector{0.0, 1.0}; }
inline double a_phi(double theta) { return std::pow(std::sin(theta / 2), 2); }
inline double g_phiphi(double theta) { return std::pow(std::sin(theta), 2); }
inline double omega_thetaphi(double theta) { return std::sin(theta); }

}  // namespace bloch

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace hbtest
