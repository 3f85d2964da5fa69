// Copyright 2026 The holobundle Authors
// SPDX-License-Identifier: Apache-2.0

#include "holobundle/family.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "holobundle/error.hpp"

namespace holobundle {

HolomorphicFamily::HolomorphicFamily(std::string name, int dim, int k, Eval eval, Derivative derivative,
                                     Traits traits)
    : name_(std::move(name)),
      dim_(dim),
      k_(k),
      eval_(std::move(eval)),
      derivative_(std::move(derivative)),
      traits_(traits) {
  if (dim_ < 2) throw Error(ErrorCode::InvalidArgument, "Hilbert dimension must be at least 2");
  if (k_ < 1) throw Error(ErrorCode::InvalidArgument, "chart dimension must be at least 1");
  if (!eval_) throw Error(ErrorCode::InvalidArgument, "family needs an evaluation function");
  if (traits_.ray_space && k_ != dim_ - 1) {
    throw Error(ErrorCode::InvalidArgument, "ray-space family must have k = dim - 1");
  }
}

bool HolomorphicFamily::in_domain(const ComplexVector& z) const {
  return z.size() == k_ && z.allFinite() && z.norm() <= traits_.domain_radius;
}

ComplexVector HolomorphicFamily::eval(const ComplexVector& z) const {
  if (z.size() != k_) throw Error(ErrorCode::DimensionMismatch, name_ + ": chart point has wrong dimension");
  if (!in_domain(z)) throw Error(ErrorCode::DomainBoundary, name_ + ": point outside chart domain");
  ComplexVector v = eval_(z);
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, name_ + ": evaluation returned wrong dimension");
  return v;
}

ComplexVector HolomorphicFamily::derivative(const ComplexVector& z, int a) const {
  if (!derivative_) throw Error(ErrorCode::InvalidArgument, name_ + ": no analytic derivative");
  if (a < 0 || a >= k_) throw Error(ErrorCode::InvalidArgument, "derivative index out of range");
  if (!in_domain(z)) throw Error(ErrorCode::DomainBoundary, name_ + ": point outside chart domain");
  return derivative_(z, a);
}

ComplexVector HolomorphicFamily::chart_from_state(const ComplexVector& psi) const {
  if (!traits_.projective_chart) {
    throw Error(ErrorCode::InvalidArgument, name_ + ": family has no ray-to-chart projection");
  }
  if (psi.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "state has wrong dimension");
  if (std::abs(psi[0]) < 1e-8 * psi.norm()) {
    throw Error(ErrorCode::ChartEscape, name_ + ": ray lies at the chart's hyperplane at infinity");
  }
  ComplexVector z = psi.tail(k_) / psi[0];
  if (!in_domain(z)) throw Error(ErrorCode::ChartEscape, name_ + ": ray projects outside chart domain");
  return z;
}

ComplexVector HolomorphicFamily::chart_velocity(const ComplexVector& psi, const ComplexVector& psi_dot) const {
  const ComplexVector z = chart_from_state(psi);
  return (psi_dot.tail(k_) - z * psi_dot[0]) / psi[0];
}

FamilyPtr make_bloch_family() {
  HolomorphicFamily::Traits traits;
  traits.ray_space = true;
  traits.projective_chart = true;
  traits.domain_radius = 1e3;
  return std::make_shared<const HolomorphicFamily>(
      "bloch", 2, 1,
      [](const ComplexVector& z) {
        ComplexVector v(2);
        v << 1.0, z[0];
        return v;
      },
      [](const ComplexVector&, int) {
        ComplexVector v(2);
        v << 0.0, 1.0;
        return v;
      },
      traits);
}

FamilyPtr make_coherent_family(int n_trunc, double radius) {
  if (n_trunc < 8) throw Error(ErrorCode::TruncationTooSmall, "coherent family needs n_trunc >= 8");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "coherent domain radius must be positive");
  const double r2 = radius * radius;
  if (n_trunc < r2 + 10.0 * std::sqrt(r2 + 1.0)) {
    throw Error(ErrorCode::TruncationTooSmall, "n_trunc = " + std::to_string(n_trunc) +
                                                   " too small for domain radius " + std::to_string(radius));
  }
  // 1/sqrt(n!) precomputed
  std::vector<double> inv_sqrt_factorial(n_trunc + 1);
  inv_sqrt_factorial[0] = 1.0;
  for (int n = 1; n <= n_trunc; ++n) inv_sqrt_factorial[n] = inv_sqrt_factorial[n - 1] / std::sqrt(double(n));

  HolomorphicFamily::Traits traits;
  traits.domain_radius = radius;
  return std::make_shared<const HolomorphicFamily>(
      "coherent", n_trunc + 1, 1,
      [inv_sqrt_factorial, n_trunc](const ComplexVector& z) {
        ComplexVector v(n_trunc + 1);
        cplx power = 1.0;
        for (int n = 0; n <= n_trunc; ++n) {
          v[n] = power * inv_sqrt_factorial[n];
          power *= z[0];
        }
        return v;
      },
      [inv_sqrt_factorial, n_trunc](const ComplexVector& z, int) {
        ComplexVector v = ComplexVector::Zero(n_trunc + 1);
        cplx power = 1.0;
        for (int n = 1; n <= n_trunc; ++n) {
          v[n] = double(n) * power * inv_sqrt_factorial[n];
          power *= z[0];
        }
        return v;
      },
      traits);
}

FamilyPtr make_cpn_chart_family(int n, double radius) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "CP^n chart needs n >= 1");
  HolomorphicFamily::Traits traits;
  traits.ray_space = true;
  traits.projective_chart = true;
  traits.domain_radius = radius;
  return std::make_shared<const HolomorphicFamily>(
      "cp" + std::to_string(n), n + 1, n,
      [n](const ComplexVector& z) {
        ComplexVector v(n + 1);
        v[0] = 1.0;
        v.tail(n) = z;
        return v;
      },
      [n](const ComplexVector&, int a) {
        ComplexVector v = ComplexVector::Zero(n + 1);
        v[a + 1] = 1.0;
        return v;
      },
      traits);
}

namespace {

cplx monomial_value(const Monomial& m, const ComplexVector& z, int skip_power_of = -1) {
  cplx value = m.coefficient;
  for (Eigen::Index a = 0; a < z.size(); ++a) {
    int p = m.powers[a];
    if (a == skip_power_of) {
      if (p == 0) return 0.0;
      value *= double(p);
      --p;
    }
    for (int i = 0; i < p; ++i) value *= z[a];
  }
  return value;
}

}  // namespace

FamilyPtr make_polynomial_family(std::string name, int k, std::vector<std::vector<Monomial>> components,
                                 HolomorphicFamily::Traits traits) {
  for (const auto& component : components) {
    for (const auto& m : component) {
      if (static_cast<int>(m.powers.size()) != k) {
        throw Error(ErrorCode::InvalidArgument, name + ": monomial exponent count differs from k");
      }
      for (int p : m.powers) {
        if (p < 0) throw Error(ErrorCode::InvalidArgument, name + ": negative exponent");
      }
    }
  }
  const int dim = static_cast<int>(components.size());
  auto shared = std::make_shared<const std::vector<std::vector<Monomial>>>(std::move(components));
  return std::make_shared<const HolomorphicFamily>(
      std::move(name), dim, k,
      [shared](const ComplexVector& z) {
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(shared->size()));
        for (std::size_t i = 0; i < shared->size(); ++i) {
          for (const auto& m : (*shared)[i]) v[i] += monomial_value(m, z);
        }
        return v;
      },
      [shared](const ComplexVector& z, int a) {
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(shared->size()));
        for (std::size_t i = 0; i < shared->size(); ++i) {
          for (const auto& m : (*shared)[i]) v[i] += monomial_value(m, z, a);
        }
        return v;
      },
      traits);
}

FamilyPtr make_rescaled_family(FamilyPtr base, std::function<cplx(const ComplexVector&)> f,
                               std::function<ComplexVector(const ComplexVector&)> grad_f) {
  if (!base || !f) throw Error(ErrorCode::InvalidArgument, "rescaled family needs a base family and f");
  HolomorphicFamily::Derivative derivative;
  if (base->has_analytic_derivative() && grad_f) {
    derivative = [base, f, grad_f](const ComplexVector& z, int a) {
      const cplx factor = std::exp(f(z));
      return ComplexVector(factor * (base->derivative(z, a) + grad_f(z)[a] * base->eval(z)));
    };
  }
  HolomorphicFamily::Traits traits = base->traits();
  traits.projective_chart = false;
  return std::make_shared<const HolomorphicFamily>(
      base->name() + "-rescaled", base->dim(), base->k(),
      [base, f](const ComplexVector& z) { return ComplexVector(std::exp(f(z)) * base->eval(z)); },
      std::move(derivative), traits);
}

FamilyPtr make_builtin_family(std::string_view name) {
  if (name == "bloch") return make_bloch_family();
  if (name == "coherent") return make_coherent_family(30, 1.5);
  if (name.size() > 2 && name.substr(0, 2) == "cp") {
    const std::string digits(name.substr(2));
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      return make_cpn_chart_family(std::stoi(digits));
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown builtin family '" + std::string(name) + "'");
}

FamilyPtr family_from_json(std::string_view descriptor) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(descriptor);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("family descriptor: ") + e.what());
  }
  try {
    const std::string kind = j.value("kind", std::string("builtin"));
    const std::string name = j.at("name").get<std::string>();
    FamilyPtr family;
    if (kind == "builtin") {
      if (name == "coherent") {
        family = make_coherent_family(j.value("n_trunc", 30), j.value("domain_radius", 1.5));
      } else if (name.rfind("cp", 0) == 0 && j.contains("domain_radius")) {
        family = make_cpn_chart_family(std::stoi(name.substr(2)), j.at("domain_radius").get<double>());
      } else {
        family = make_builtin_family(name);
      }
    } else if (kind == "polynomial") {
      const int k = j.at("k").get<int>();
      std::vector<std::vector<Monomial>> components;
      for (const auto& comp : j.at("coefficients")) {
        std::vector<Monomial> terms;
        for (const auto& term : comp) {
          const auto& c = term.at("c");
          terms.push_back({cplx(c.at(0).get<double>(), c.at(1).get<double>()),
                           term.at("powers").get<std::vector<int>>()});
        }
        components.push_back(std::move(terms));
      }
      HolomorphicFamily::Traits traits;
      traits.ray_space = j.value("ray_space", false);
      traits.projective_chart = j.value("projective_chart", false);
      traits.domain_radius = j.value("domain_radius", 10.0);
      family = make_polynomial_family(name, k, std::move(components), traits);
    } else {
      throw Error(ErrorCode::ConfigInvalid, "unknown family kind '" + kind + "'");
    }
    if (j.contains("dim") && j.at("dim").get<int>() != family->dim()) {
      throw Error(ErrorCode::ConfigInvalid, "descriptor dim does not match family");
    }
    if (j.contains("k") && j.at("k").get<int>() != family->k()) {
      throw Error(ErrorCode::ConfigInvalid, "descriptor k does not match family");
    }
    return family;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("family descriptor: ") + e.what());
  }
}

double holomorphy_residual(const HolomorphicFamily& family, const ComplexVector& z, double h) {
  double worst = 0.0;
  for (int a = 0; a < family.k(); ++a) {
    ComplexVector dz = ComplexVector::Zero(family.k());
    dz[a] = h;
    const ComplexVector dx = (family.eval(z + dz) - family.eval(z - dz)) / (2.0 * h);
    dz[a] = cplx(0.0, h);
    const ComplexVector dy = (family.eval(z + dz) - family.eval(z - dz)) / (2.0 * h);
    // d/dzbar = (d/dx + i d/dy) / 2
    worst = std::max(worst, (0.5 * (dx + cplx(0.0, 1.0) * dy)).norm());
  }
  return worst;
}

}  // namespace holobundle
