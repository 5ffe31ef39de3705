#include "crsurf/model.hpp"

namespace crsurf {
namespace {

// Flat model: theta = dt + x dy - y dx, W = 0, A_11 = 0.
class Heisenberg final : public ModelGeometry {
 public:
  std::string name() const override { return "heisenberg"; }
  bool in_chart(const Vec3& p) const override { return p.allFinite(); }
  Vec3 theta(const Vec3& p) const override { return {-p[1], p[0], 1.0}; }
  Frame frame(const Vec3& p) const override {
    return {Vec3(1.0, 0.0, p[1]), Vec3(0.0, 1.0, -p[0]), Vec3(0.0, 0.0, 1.0)};
  }
  ConnectionForm omega(const Vec3&) const override { return {}; }
  cplx torsion_A11(const Vec3&) const override { return {0.0, 0.0}; }
  double webster_W(const Vec3&) const override { return 0.0; }
  cplx density_extras(const Vec3&) const override { return {0.0, 0.0}; }
  bool has_constant_invariants() const override { return true; }
};

}  // namespace

ModelPtr make_heisenberg() { return std::make_shared<Heisenberg>(); }

}  // namespace crsurf
