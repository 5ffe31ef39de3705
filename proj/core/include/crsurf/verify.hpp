#pragma once

#include "crsurf/variational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace crsurf {

enum class Check {
  Near,   // |value - expected| <= tolerance
  Below,  // value < tolerance
  Above,  // value > expected
};

struct MeasuredRow {
  std::string name;
  double value = 0;
  double expected = 0;
  double tolerance = 0;
  std::string basis;  // "closed form", "derived", "measured", ...
  Check check = Check::Near;

  bool pass() const;
};

struct LemmaReport {
  std::string lemma_id;
  std::string title;
  bool pass = false;
  std::vector<MeasuredRow> measured;
  long runtime_ms = 0;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  // Quadrature grid per axis; 0 keeps each protocol's default.
  int grid = 0;
  // Residual sample grid per axis; 0 keeps each protocol's default.
  int sample_grid = 0;
  std::uint64_t seed = 20240611;
};

std::vector<std::string> lemma_ids();
LemmaReport verify_lemma(const std::string& id, const VerifyOptions& options = {});

// Sample nodes for pointwise checks: midpoints of an n_u x n_v grid on the
// rectangle, inset by `inset` (fraction of the extent) on non-periodic axes.
std::vector<std::pair<double, double>> sample_nodes(const ParamDomain& D, int n_u, int n_v, double inset = 0.05);

struct ScanRow {
  double c = 0;
  double E2 = 0;
  double error_estimate = 0;
};

struct RossiScan {
  double t = 0;
  bool hypothesis_holds = true;
  std::string warning;
  std::vector<ScanRow> rows;
};

// E2 of the tori rho_1 = c in the Rossi sphere.
RossiScan scan_rossi_E2(std::span<const double> c_values, double t, int grid = 16);
// Both tails strictly increasing in c over their last k samples, with |E2| growing outward.
bool scan_tails_diverge(const RossiScan& scan, int k = 5);

struct EllipseRoot {
  double t0 = 0;
  double s0 = 0;
  double hcr_at_0 = 0;
  double hcr_at_half_pi = 0;
  double hcr_at_root = 0;
};

// Root of t -> H_cr on the slice through the ellipse point at parameter t.
EllipseRoot ellipse_hcr_root(double a, double b, double tol = 1e-10);
// H_cr of the torus slice through the ellipse point at parameter t.
double ellipse_slice_hcr(const ModelPtr& torus, const EllipseCurve& curve, double t);

struct SpotCheck {
  std::string label = "NON-PROOF numeric spot check";
  bool skipped = false;
  std::string warning;
  std::vector<std::pair<double, double>> samples;  // (family parameter, E1)
  double min_E1 = 0;
};

// Positivity of E1 over sampled members of rho_1 = c tori (Rossi) or s = c slices (circle torus).
SpotCheck spot_check_no_zero_E1(const std::string& model_spec, std::span<const double> family, int grid = 16);

}  // namespace crsurf
