#include "crsurf/model.hpp"

namespace crsurf {
namespace {

// B^1 x R with theta = dt + 4 (x dy - y dx) / (1 - r^2).
class DiskBundle final : public ModelGeometry {
 public:
  std::string name() const override { return "disk-bundle"; }

  bool in_chart(const Vec3& p) const override { return p[0] * p[0] + p[1] * p[1] < 1.0; }

  Vec3 theta(const Vec3& p) const override {
    const double q = 4.0 / (1.0 - p[0] * p[0] - p[1] * p[1]);
    return {-q * p[1], q * p[0], 1.0};
  }

  Frame frame(const Vec3& p) const override {
    const double x = p[0], y = p[1];
    const double half = 0.5 * (1.0 - x * x - y * y);
    return {Vec3(half, 0.0, 2.0 * y), Vec3(0.0, half, -2.0 * x), Vec3(0.0, 0.0, 1.0)};
  }

  ConnectionForm omega(const Vec3& p) const override { return {-p[1], p[0], 0.0}; }
  cplx torsion_A11(const Vec3&) const override { return {0.0, 0.0}; }
  double webster_W(const Vec3&) const override { return -0.5; }
  cplx density_extras(const Vec3&) const override { return {0.0, 0.0}; }
  bool has_constant_invariants() const override { return true; }
};

}  // namespace

ModelPtr make_disk_bundle() { return std::make_shared<DiskBundle>(); }

}  // namespace crsurf
