#include "crsurf/model.hpp"
#include "crsurf/numerics.hpp"

#include <cmath>
#include <numbers>

namespace crsurf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a, double period) {
  double r = std::fmod(a, period);
  return r < 0 ? r + period : r;
}

double webster_from(const CurveSample& c) {
  const double k = c.kappa;
  return (k * k * k * k - k * c.ddkappa + c.dkappa * c.dkappa) / (2.0 * k * k * k);
}

// Torus (s, x, y) -> (e^{xi(s) + i x}, e^{eta(s) + i y}) over a generating curve.
// theta = eta' dx + xi' dy, Z_1 = (d_s - i xi' d_x + i eta' d_y) / sqrt(2 kappa).
class TorusModel final : public ModelGeometry {
 public:
  explicit TorusModel(CurvePtr curve) : curve_(std::move(curve)) {}

  std::string name() const override { return "torus:" + curve_->name(); }
  bool in_chart(const Vec3& p) const override { return p.allFinite(); }

  Vec3 normalize(const Vec3& p) const override {
    return {wrap(p[0], curve_->period()), wrap(p[1], kTwoPi), wrap(p[2], kTwoPi)};
  }

  Vec3 theta(const Vec3& p) const override {
    const CurveSample c = curve_->at(p[0]);
    return {0.0, c.deta, c.dxi};
  }

  Frame frame(const Vec3& p) const override {
    const CurveSample c = curve_->at(p[0]);
    const double k = std::sqrt(2.0 / c.kappa);
    return {Vec3(k, 0.0, 0.0), Vec3(0.0, k * c.dxi, -k * c.deta), Vec3(0.0, c.deta, c.dxi)};
  }

  ConnectionForm omega(const Vec3& p) const override {
    const CurveSample c = curve_->at(p[0]);
    return {0.0, c.dkappa / (std::sqrt(2.0) * std::pow(c.kappa, 1.5)), -0.5 * c.kappa};
  }

  cplx torsion_A11(const Vec3& p) const override { return {0.0, -0.5 * curve_->at(p[0]).kappa}; }

  double webster_W(const Vec3& p) const override { return webster_from(curve_->at(p[0])); }

  // W^{,1} = Z_1(W); (A^{11})_{,1} = Z_1(A^{11}) + 2 omega_1^1(Z_1) A^{11} with A^{11} = conj(A_11).
  // Both reduce to real multiples of 1/sqrt(2 kappa).
  cplx density_extras(const Vec3& p) const override {
    const double s = p[0];
    const CurveSample c = curve_->at(s);
    const double dW = num::diff5([&](double ds) { return webster_from(curve_->at(s + ds)); },
                                 num::field_step(s));
    const double z = 1.0 / std::sqrt(2.0 * c.kappa);
    return {(dW / 6.0 - 2.0 * c.dkappa / 3.0) * z, 0.0};
  }

  const GeneratingCurve& curve() const { return *curve_; }

 private:
  CurvePtr curve_;
};

}  // namespace

ModelPtr make_torus(CurvePtr curve) {
  if (!curve) throw DomainError("torus needs a generating curve");
  const double L = curve->period();
  if (!(L > 0.0)) throw DomainError("generating curve period must be positive");
  const int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const CurveSample c = curve->at(L * i / samples);
    if (std::abs(std::hypot(c.dxi, c.deta) - 1.0) > 1e-10)
      throw DomainError("generating curve is not parameterized by arclength");
    if (!(c.kappa > 0.0)) throw DomainError("generating curve must have positive curvature");
  }
  const CurveSample c0 = curve->at(0.0), cL = curve->at(L);
  if (std::hypot(c0.xi - cL.xi, c0.eta - cL.eta) > 1e-8 || std::abs(c0.kappa - cL.kappa) > 1e-8)
    throw DomainError("generating curve is not closed");
  return std::make_shared<TorusModel>(std::move(curve));
}

const GeneratingCurve* torus_curve(const ModelGeometry& model) {
  const auto* t = dynamic_cast<const TorusModel*>(&model);
  return t ? &t->curve() : nullptr;
}

}  // namespace crsurf
