#pragma once

#include "crsurf/functionals.hpp"

#include <stdexcept>

namespace crsurf {

// Thrown when a residual divides by a vanishing H_cr.
struct UndefinedResidualError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ELIntermediates {
  double h11 = 0, h10 = 0, h00 = 0;
  double h111 = 0, h110 = 0, h100 = 0;
  double frak_f = 0;
  double H_cr = 0;
  // Tangential derivatives and pointwise data used above.
  double alpha = 0, e1H = 0, VH = 0, e1alpha = 0, Valpha = 0, Vh10 = 0;
  double W = 0;
  cplx A11{0, 0};
  cplx extras{0, 0};
};

inline constexpr double kDefaultTolHcr = 1e-8;

// h-symbols and f at (u, v), assembled from the h-symbol products.
ELIntermediates el_intermediates(const SurfaceCalculus& sc, double u, double v);
// |H_cr| f from the fully expanded expression; independent of el_intermediates.
double hcr_frak_f_expanded(const SurfaceCalculus& sc, double u, double v);

double el1_general(const SurfaceCalculus& sc, double u, double v, double tol_hcr = kDefaultTolHcr);
// Vanishing-torsion, constant-W form.
double el1_cyz(const SurfaceCalculus& sc, double u, double v, double tol_hcr = kDefaultTolHcr);
// Constant W and purely imaginary constant torsion.
double el2_constant(const SurfaceCalculus& sc, double u, double v);
// Vanishing-torsion, constant-W form.
double el2_cyz(const SurfaceCalculus& sc, double u, double v);

// Normal deformation F + delta (f e2 + g T).
struct Bump {
  double u0 = 0, v0 = 0, width = 0.5;
  // Smooth compactly supported profile with sup-norm 1, periodic axes wrapped.
  double operator()(const ParamDomain& D, double u, double v) const;
};

struct Deformation {
  Bump bump;
  double f_amp = 1.0;
  double g_amp = 0.0;
  double delta = 1e-3;
};

// The deformed immersion at step t; the result carries no defining function.
SurfacePtr deform_surface(const SurfaceCalculus& sc, const Deformation& d, double t);

struct VariationResult {
  double value = 0;       // Richardson-extrapolated derivative
  double coarse = 0;      // centered difference at delta
  double fine = 0;        // centered difference at delta / 2
};

VariationResult first_variation(const SurfaceCalculus& sc, Functional which, const Deformation& d, int n_u = 64,
                                int n_v = 64);

}  // namespace crsurf
