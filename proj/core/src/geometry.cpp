#include "crsurf/model.hpp"
#include "crsurf/numerics.hpp"

#include <sstream>

namespace crsurf {

ChartPoint::ChartPoint(const ModelGeometry& model, const Vec3& coords) {
  if (!model.in_chart(coords)) {
    std::ostringstream os;
    os << "point (" << coords[0] << ", " << coords[1] << ", " << coords[2] << ") outside the "
       << model.name() << " chart";
    throw DomainError(os.str());
  }
  coords_ = model.normalize(coords);
}

TangentVector TangentVector::operator+(const TangentVector& o) const {
  if (!base_.isApprox(o.base_, 1e-14)) throw std::invalid_argument("tangent vectors at different base points");
  return {base_, v_ + o.v_};
}

TangentVector TangentVector::operator-(const TangentVector& o) const {
  if (!base_.isApprox(o.base_, 1e-14)) throw std::invalid_argument("tangent vectors at different base points");
  return {base_, v_ - o.v_};
}

Mat3 ModelGeometry::coframe(const Vec3& p) const { return frame(p).matrix().inverse(); }

Vec3 ModelGeometry::omega_covector(const Vec3& p) const {
  const Mat3 co = coframe(p);
  const ConnectionForm w = omega(p);
  return w.onX * co.row(0).transpose() + w.onY * co.row(1).transpose() + w.onT * co.row(2).transpose();
}

TangentVector covariant_derivative(const ModelGeometry& model, const TangentVector& direction,
                                   const std::function<Vec3(const Vec3&)>& field) {
  const Vec3& p = direction.base();
  if (!model.in_chart(p)) throw DomainError("covariant derivative base point outside chart");
  const Vec3& v = direction.components();
  const double scale = std::max(v.norm(), 1e-300);
  const double h = num::field_step(p.norm()) / scale;

  auto components = [&](double tau) -> Vec3 {
    const Vec3 q = p + tau * v;
    return model.coframe(q) * field(q);
  };
  Vec3 dcomp;
  for (int k = 0; k < 3; ++k) dcomp[k] = num::diff5([&](double tau) { return components(tau)[k]; }, h);

  const Frame fr = model.frame(p);
  const Vec3 c = components(0.0);
  const double w = model.omega_covector(p).dot(v);
  const Vec3 out = dcomp[0] * fr.X + dcomp[1] * fr.Y + dcomp[2] * fr.T + c[0] * w * fr.Y - c[1] * w * fr.X;
  return {p, out};
}

}  // namespace crsurf
