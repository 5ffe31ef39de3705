#pragma once

#include "crsurf/model.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace crsurf {

using Vec2 = Eigen::Vector2d;

struct ParamDomain {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  bool periodic_u = false;
  bool periodic_v = false;
};

// A surface given by an immersion of a parameter rectangle, optionally paired
// with a defining function u whose zero set contains the image.
struct SurfacePatch {
  std::string label;
  std::function<Vec3(double, double)> F;
  // Analytic (F_u, F_v); finite differences are used when empty.
  std::function<std::pair<Vec3, Vec3>(double, double)> dF;
  std::function<double(const Vec3&)> level;
  std::function<Vec3(const Vec3&)> level_gradient;
  ParamDomain domain;
  double singular_eps = 1e-6;

  bool has_level_set() const { return static_cast<bool>(level) && static_cast<bool>(level_gradient); }
};

using SurfacePtr = std::shared_ptr<const SurfacePatch>;

struct SurfaceOptions {
  // Parameter-space step of the nested tangential stencils.
  double tangential_step = 2e-3;
};

// Adapted data at a parameter point, before any tangential differentiation.
struct LocalFrame {
  double u = 0, v = 0;
  Vec3 p;
  Vec3 e1, e2;          // chart components
  double c1 = 1, c2 = 0;  // e1 = c1 X + c2 Y
  double alpha = 0;
  double area2form = 0;   // (theta ^ e^1)(F_u, F_v)
  Vec2 e1_param;          // e1 = e1_param[0] F_u + e1_param[1] F_v
  Vec2 V_param;           // T + alpha e2 in the same basis
  double tilt = 0;        // sine of the angle between T Sigma and the contact plane
  bool singular = false;
};

struct FramePointData {
  Vec3 p;
  Vec3 e1, e2;
  double alpha = 0;
  double H = 0;
  double H_cr = 0;
  double area2form = 0;
  bool singular = false;
};

struct LevelSetFrame {
  Vec3 e1, e2;
  double alpha = 0;
  double grad_b_norm = 0;
  bool singular = false;
};

// Scalar field on the surface, in parameter coordinates.
using SurfaceField = std::function<double(double, double)>;

enum class Direction { E1, V };

// Intrinsic calculus on an immersed surface inside a model.
class SurfaceCalculus {
 public:
  SurfaceCalculus(ModelPtr model, SurfacePtr surface, SurfaceOptions options = {});

  const ModelGeometry& model() const { return *model_; }
  const SurfacePatch& surface() const { return *surface_; }
  const ModelPtr& model_ptr() const { return model_; }
  const SurfacePtr& surface_ptr() const { return surface_; }
  const SurfaceOptions& options() const { return options_; }

  LocalFrame local(double u, double v) const;
  std::pair<Vec3, Vec3> tangents(double u, double v) const;

  // e1(f) or V(f) at (u, v), f differentiated in parameters along the direction.
  double derivative(Direction d, const SurfaceField& f, double u, double v) const;
  double e1(const SurfaceField& f, double u, double v) const { return derivative(Direction::E1, f, u, v); }
  double V(const SurfaceField& f, double u, double v) const { return derivative(Direction::V, f, u, v); }

  double alpha(double u, double v) const;
  double H(double u, double v) const;
  // Cross-check path: Levi product of the component derivative of e1 with e2.
  double H_covariant(double u, double v) const;
  double e1_alpha(double u, double v) const;
  double W(double u, double v) const;
  cplx A11(double u, double v) const;
  // e1(alpha) + alpha^2/2 - Im A_11 + W/4
  double h10(double u, double v) const;
  double H_cr(double u, double v) const;

  FramePointData point(double u, double v) const;

  // Frame from the defining function: e2 = grad_b u / |grad_b u|, e1 = -J e2.
  LevelSetFrame level_set_frame(const Vec3& p) const;

  SurfaceField field(double (SurfaceCalculus::*m)(double, double) const) const {
    return [this, m](double u, double v) { return (this->*m)(u, v); };
  }

 private:
  ModelPtr model_;
  SurfacePtr surface_;
  SurfaceOptions options_;
};

// Free-function forms of the surface operations at parameter point (u, v).
FramePointData legendrian_frame(const SurfaceCalculus& sc, double u, double v);
double derivation_alpha(const SurfaceCalculus& sc, double u, double v);
double p_mean_curvature(const SurfaceCalculus& sc, double u, double v);
double h_cr(const SurfaceCalculus& sc, double u, double v);
double tangential_derivative(const SurfaceCalculus& sc, double u, double v, Direction d, const SurfaceField& f);

// Surface families. Parameter orders are chosen so that theta ^ e^1 > 0 and the
// immersion frame agrees with the defining-function frame.
SurfacePtr plane_surface(double a, double b, double c, double collar = 1e-3, double t0 = 0.0, double t1 = 1.0);
SurfacePtr cylinder_surface(double rho, double t0 = 0.0, double t1 = 1.0);
// Upper sheet t = sqrt(c) over the annulus r in [r0, r1].
SurfacePtr graph_t2_surface(double c, double r0 = 0.25, double r1 = 0.95);
SurfacePtr rossi_sigma_surface(double c);
// Slice s = c of a torus model, parameters (y, x).
SurfacePtr torus_slice_surface(double s, double period);

// plane:a,b,c  cylinder:rho  graph-t2:c  rossi-sigma:c  torus-slice:c
SurfacePtr parse_surface(const std::string& spec, const ModelGeometry& model);
std::vector<std::string> surface_catalog();

}  // namespace crsurf
