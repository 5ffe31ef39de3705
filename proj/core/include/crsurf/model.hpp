#pragma once

#include "crsurf/geometry.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace crsurf {

// Pseudohermitian 3-manifold on a single chart. Immutable; every callback is a
// pure function of the point, so instances can be shared across threads.
class ModelGeometry {
 public:
  virtual ~ModelGeometry() = default;

  virtual std::string name() const = 0;
  virtual bool in_chart(const Vec3& p) const = 0;
  // Wraps periodic coordinates into their fundamental domain.
  virtual Vec3 normalize(const Vec3& p) const { return p; }

  // Contact form as a covector in chart components.
  virtual Vec3 theta(const Vec3& p) const = 0;
  virtual Frame frame(const Vec3& p) const = 0;
  virtual ConnectionForm omega(const Vec3& p) const = 0;
  virtual cplx torsion_A11(const Vec3& p) const = 0;
  virtual double webster_W(const Vec3& p) const = 0;
  // (1/6) W^{,1} + (2i/3) (A^{11})_{,1}
  virtual cplx density_extras(const Vec3& p) const = 0;

  // True when W and A_11 are constant over the chart.
  virtual bool has_constant_invariants() const { return false; }

  // Rows: e^1, e^2, theta (dual to X, Y, T).
  Mat3 coframe(const Vec3& p) const;
  // omega as a chart covector.
  Vec3 omega_covector(const Vec3& p) const;
  ChartPoint point(double a, double b, double c) const { return ChartPoint(*this, Vec3(a, b, c)); }
};

using ModelPtr = std::shared_ptr<const ModelGeometry>;

struct CurveSample {
  double xi = 0, eta = 0;    // position
  double dxi = 0, deta = 0;  // unit tangent
  double kappa = 0, dkappa = 0, ddkappa = 0;
};

// Closed, positively curved plane curve parameterized by arclength.
class GeneratingCurve {
 public:
  virtual ~GeneratingCurve() = default;
  virtual double period() const = 0;
  virtual CurveSample at(double s) const = 0;
  virtual std::string name() const = 0;
};

using CurvePtr = std::shared_ptr<const GeneratingCurve>;

class EllipseCurve : public GeneratingCurve {
 public:
  EllipseCurve(double a, double b);

  double period() const override { return length_; }
  CurveSample at(double s) const override;
  std::string name() const override;

  double a() const { return a_; }
  double b() const { return b_; }
  // Arclength from t = 0 to parameter t (t in [0, 2pi]).
  double arclength(double t) const;
  double parameter_at(double s) const;
  // Curvature and its arclength derivatives at ellipse parameter t.
  CurveSample at_parameter(double t) const;

 private:
  double a_, b_;
  double length_ = 0;
  std::vector<double> t_nodes_, s_nodes_;
  std::function<double(double)> t_of_s_;
};

ModelPtr make_disk_bundle();
ModelPtr make_heisenberg();
ModelPtr make_rossi_sphere(double t, double chart_delta = 1e-3);
ModelPtr make_torus(CurvePtr curve);

CurvePtr circle_curve(double r);
std::shared_ptr<const EllipseCurve> ellipse_curve(double a, double b);

// Rossi and torus accessors used by closed-form cross-checks.
double rossi_parameter(const ModelGeometry& model);
const GeneratingCurve* torus_curve(const ModelGeometry& model);

// Tanaka-Webster derivative of a vector field along a direction at its base point.
TangentVector covariant_derivative(const ModelGeometry& model, const TangentVector& direction,
                                   const std::function<Vec3(const Vec3&)>& field);

// Model catalog: disk-bundle, rossi:<t>, torus-circle:<r>, torus-ellipse:<a>,<b>, heisenberg.
ModelPtr parse_model(const std::string& spec);
std::vector<std::string> model_catalog();

}  // namespace crsurf
