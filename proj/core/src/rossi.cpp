#include "crsurf/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crsurf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rossi sphere in (rho1, phi1, phi2), rho2 = sqrt(1 - rho1^2).
// Z_1(t) = (Z_1 + t Z_1bar) / sqrt(1 - t^2) with Z_1 = zbar2 d/dz1 - zbar1 d/dz2.
class RossiSphere final : public ModelGeometry {
 public:
  RossiSphere(double t, double delta) : t_(t), delta_(delta) {}

  std::string name() const override {
    std::ostringstream os;
    os << "rossi:" << t_;
    return os.str();
  }

  bool in_chart(const Vec3& p) const override {
    return p.allFinite() && p[0] > delta_ && p[0] < 1.0 - delta_;
  }

  Vec3 normalize(const Vec3& p) const override {
    auto wrap = [](double a) {
      double r = std::fmod(a, kTwoPi);
      return r < 0 ? r + kTwoPi : r;
    };
    return {p[0], wrap(p[1]), wrap(p[2])};
  }

  Vec3 theta(const Vec3& p) const override { return {0.0, p[0] * p[0], 1.0 - p[0] * p[0]}; }

  Frame frame(const Vec3& p) const override {
    const double r1 = p[0], r2 = std::sqrt(1.0 - r1 * r1);
    const double psi = p[1] + p[2];
    const double c = std::cos(psi), s = std::sin(psi);
    const double norm = std::sqrt(1.0 - t_ * t_);
    const Vec3 R(r2, 0.0, 0.0);
    const Vec3 P(0.0, r2 / r1, -r1 / r2);
    return {(1.0 + t_) / norm * (c * R - s * P), (1.0 - t_) / norm * (s * R + c * P), Vec3(0.0, 1.0, 1.0)};
  }

  ConnectionForm omega(const Vec3&) const override { return {0.0, 0.0, -webster_W(Vec3::Zero())}; }

  cplx torsion_A11(const Vec3&) const override { return {0.0, 4.0 * t_ / (1.0 - t_ * t_)}; }
  double webster_W(const Vec3&) const override { return 2.0 * (1.0 + t_ * t_) / (1.0 - t_ * t_); }
  cplx density_extras(const Vec3&) const override { return {0.0, 0.0}; }
  bool has_constant_invariants() const override { return true; }

  double t() const { return t_; }

 private:
  double t_;
  double delta_;
};

}  // namespace

ModelPtr make_rossi_sphere(double t, double chart_delta) {
  if (!(std::abs(t) < 1.0)) throw DomainError("Rossi sphere parameter must satisfy |t| < 1");
  if (!(chart_delta > 0.0 && chart_delta < 0.5)) throw DomainError("chart delta must lie in (0, 0.5)");
  return std::make_shared<RossiSphere>(t, chart_delta);
}

double rossi_parameter(const ModelGeometry& model) {
  const auto* r = dynamic_cast<const RossiSphere*>(&model);
  if (!r) throw PreconditionError("model " + model.name() + " is not a Rossi sphere");
  return r->t();
}

}  // namespace crsurf
