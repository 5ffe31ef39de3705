#pragma once

#include "crsurf/surface.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace crsurf {

struct DensityValue {
  Vec3 p;
  double dA1_scalar = 0;  // |H_cr|^{3/2}
  double dA2_scalar = 0;  // bracket of dA_2
  double area2form = 0;   // (theta ^ e^1)(F_u, F_v)
  double H_cr = 0;
};

enum class Functional { E1, E2 };

Functional parse_functional(const std::string& name);
const char* functional_name(Functional f);

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  double excluded_fraction = 0;
  long nodes = 0;
  int n_u = 0, n_v = 0;
};

DensityValue density_dA1(const SurfaceCalculus& sc, double u, double v);
DensityValue density_dA2(const SurfaceCalculus& sc, double u, double v);

// Quadrature without the refinement pass. Periodic axes use the midpoint rule,
// the others composite Simpson. Nodes that are singular, or next to one, are dropped.
QuadratureResult integrate_once(const SurfaceCalculus& sc, Functional which, int n_u, int n_v);
// Same over an explicit rectangle, which may differ from the surface's own domain.
QuadratureResult integrate_region(const SurfaceCalculus& sc, Functional which, const ParamDomain& box, int n_u, int n_v);
// integrate_once plus an error estimate from the half-resolution grid.
QuadratureResult integrate(const SurfaceCalculus& sc, Functional which, int n_u, int n_v);

struct ConformalFactor {
  std::string label;
  std::function<double(const Vec3&)> lambda;
};

struct ConformalPair {
  double original = 0;     // |H_cr|^{3/2} theta ^ e^1 on (F_u, F_v)
  double transformed = 0;  // same 2-form assembled from the rescaled quantities
  double H_cr = 0;
  double H_cr_tilde = 0;
};

// Step used for the chart derivatives of lambda.
inline constexpr double kConformalStep = 1e-3;

// "const:k", "affine:a0,ax,ay,at" (lambda = a0 + a.p), "trig:c0,a,kx,ky,kt,phase"
// (lambda = exp(c0 + a sin(k.p + phase))) or "random:<seed>".
ConformalFactor parse_conformal_factor(const std::string& spec);
// exp of a small random trigonometric sum; positive everywhere.
ConformalFactor random_conformal_factor(std::uint64_t seed);

ConformalPair conformal_check(const SurfaceCalculus& sc, const ConformalFactor& lambda, double u, double v);

}  // namespace crsurf
