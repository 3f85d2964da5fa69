// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "holobundle/state.hpp"

namespace holobundle {

/// A holomorphic map z in C^k -> unnormalized vector in C^N. Immutable after
/// construction and safe to share between threads.
class HolomorphicFamily {
 public:
  using Eval = std::function<ComplexVector(const ComplexVector&)>;
  // d psi~ / d z^a.
  using Derivative = std::function<ComplexVector(const ComplexVector&, int)>;

  struct Traits {
    // The chart covers an open set of the full ray space CP^{N-1} (k = N - 1).
    bool ray_space = false;
    // Rays project back to the chart by z^a = c_a / c_0.
    bool projective_chart = false;
    // Chart domain is the ball |z| <= domain_radius.
    double domain_radius = std::numeric_limits<double>::infinity();
  };

  HolomorphicFamily(std::string name, int dim, int k, Eval eval, Derivative derivative, Traits traits);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] const Traits& traits() const noexcept { return traits_; }
  [[nodiscard]] bool ray_space() const noexcept { return traits_.ray_space; }
  [[nodiscard]] bool has_analytic_derivative() const noexcept { return static_cast<bool>(derivative_); }

  [[nodiscard]] bool in_domain(const ComplexVector& z) const;
  [[nodiscard]] ComplexVector eval(const ComplexVector& z) const;
  [[nodiscard]] ComplexVector derivative(const ComplexVector& z, int a) const;

  // Ray -> chart coordinates for projective charts. Throws ChartEscape when the
  // ray is at (or numerically near) the hyperplane at infinity or leaves the domain.
  [[nodiscard]] ComplexVector chart_from_state(const ComplexVector& psi) const;
  // dz/dt for a curve psi(t) with velocity psi_dot, projective charts only.
  [[nodiscard]] ComplexVector chart_velocity(const ComplexVector& psi, const ComplexVector& psi_dot) const;

 private:
  std::string name_;
  int dim_;
  int k_;
  Eval eval_;
  Derivative derivative_;
  Traits traits_;
};

using FamilyPtr = std::shared_ptr<const HolomorphicFamily>;

// psi~(z) = (1, z): the Bloch sphere by stereographic projection.
FamilyPtr make_bloch_family();

// psi~(z) = sum_{n <= n_trunc} z^n / sqrt(n!) |n>, on |z| <= radius. Requires
// n_trunc >= 8 and n_trunc >= radius^2 + 10 sqrt(radius^2 + 1).
FamilyPtr make_coherent_family(int n_trunc, double radius = 1.0);

// psi~(z) = (1, z^1, ..., z^n): affine chart of CP^n.
FamilyPtr make_cpn_chart_family(int n, double radius = 10.0);

struct Monomial {
  cplx coefficient;
  std::vector<int> powers;  // one exponent per complex coordinate
};

// Component i of psi~ is the polynomial components[i].
FamilyPtr make_polynomial_family(std::string name, int k, std::vector<std::vector<Monomial>> components,
                                 HolomorphicFamily::Traits traits = {});

// psi~'(z) = e^{f(z)} psi~(z).
FamilyPtr make_rescaled_family(FamilyPtr base, std::function<cplx(const ComplexVector&)> f,
                               std::function<ComplexVector(const ComplexVector&)> grad_f);

// Builtin names: "bloch", "coherent", "cp<n>".
FamilyPtr make_builtin_family(std::string_view name);

// JSON descriptor: {"name", "kind": "builtin"|"polynomial", "dim", "k", ...}.
// Builtins accept "n_trunc" and "domain_radius"; polynomials take
// "coefficients": [[{"c": [re, im], "powers": [...]}, ...] per component].
FamilyPtr family_from_json(std::string_view descriptor);

// max_a || d psi~ / d zbar^a || by central differences of step h.
double holomorphy_residual(const HolomorphicFamily& family, const ComplexVector& z, double h = 1e-5);

}  // namespace holobundle
