#include "crsurf/surface.hpp"
#include "crsurf/numerics.hpp"

#include <cmath>

namespace crsurf {

SurfaceCalculus::SurfaceCalculus(ModelPtr model, SurfacePtr surface, SurfaceOptions options)
    : model_(std::move(model)), surface_(std::move(surface)), options_(options) {
  if (!model_ || !surface_) throw std::invalid_argument("surface calculus needs a model and a surface");
  if (!(options_.tangential_step > 0.0)) throw std::invalid_argument("tangential step must be positive");
}

std::pair<Vec3, Vec3> SurfaceCalculus::tangents(double u, double v) const {
  if (surface_->dF) return surface_->dF(u, v);
  const double hu = num::field_step(u), hv = num::field_step(v);
  Vec3 Fu, Fv;
  for (int k = 0; k < 3; ++k) {
    Fu[k] = num::diff5([&](double d) { return surface_->F(u + d, v)[k]; }, hu);
    Fv[k] = num::diff5([&](double d) { return surface_->F(u, v + d)[k]; }, hv);
  }
  return {Fu, Fv};
}

LocalFrame SurfaceCalculus::local(double u, double v) const {
  LocalFrame lf;
  lf.u = u;
  lf.v = v;
  lf.p = surface_->F(u, v);
  if (!model_->in_chart(lf.p)) throw DomainError("surface point leaves the " + model_->name() + " chart");

  const auto [Fu, Fv] = tangents(u, v);
  const Frame fr = model_->frame(lf.p);
  const Mat3 co = fr.matrix().inverse();
  const Vec3 a = co * Fu;
  const Vec3 b = co * Fv;

  const Vec3 n = a.cross(b);
  const double nn = n.norm();
  if (!(nn > 0.0)) throw DomainError("immersion is degenerate at (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  lf.tilt = std::hypot(n[0], n[1]) / nn;

  // Horizontal direction of the tangent plane, oriented so that theta ^ e^1 > 0.
  const Vec2 dh(a[2] * b[0] - b[2] * a[0], a[2] * b[1] - b[2] * a[1]);
  const double dn = dh.norm();
  lf.singular = lf.tilt < surface_->singular_eps || !(dn > 0.0);
  if (!(dn > 0.0)) return lf;

  lf.c1 = dh[0] / dn;
  lf.c2 = dh[1] / dn;
  lf.area2form = dn;
  lf.e1_param = Vec2(-b[2] / dn, a[2] / dn);
  lf.e1 = lf.c1 * fr.X + lf.c2 * fr.Y;
  lf.e2 = -lf.c2 * fr.X + lf.c1 * fr.Y;

  const double ne2 = -n[0] * lf.c2 + n[1] * lf.c1;
  lf.alpha = -n[2] / ne2;

  // T + alpha e2 in the (F_u, F_v) basis: least squares on the Gram system.
  const Vec3 w(-lf.alpha * lf.c2, lf.alpha * lf.c1, 1.0);
  Eigen::Matrix2d G;
  G << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
  lf.V_param = G.ldlt().solve(Vec2(a.dot(w), b.dot(w)));
  return lf;
}

double SurfaceCalculus::derivative(Direction d, const SurfaceField& f, double u, double v) const {
  const LocalFrame lf = local(u, v);
  if (lf.singular) throw SingularPointError("tangential derivative requested at a singular point");
  const Vec2 dir = d == Direction::E1 ? lf.e1_param : lf.V_param;
  const double len = dir.norm();
  if (len == 0.0) return 0.0;
  const double h = options_.tangential_step / len;
  auto along = [&](double tau) { return f(u + tau * dir[0], v + tau * dir[1]); };
  const auto inside = [&](double tau) {
    const ParamDomain& D = surface_->domain;
    const double uu = u + tau * dir[0], vv = v + tau * dir[1];
    const double tol = 1e-12;
    if (!D.periodic_u && (uu < D.u0 - tol || uu > D.u1 + tol)) return false;
    if (!D.periodic_v && (vv < D.v0 - tol || vv > D.v1 + tol)) return false;
    return true;
  };
  if (inside(-2 * h) && inside(2 * h)) return num::diff5(along, h);
  if (inside(4 * h)) return num::diff5_onesided(along, h);
  if (inside(-4 * h)) return num::diff5_onesided(along, -h);
  // Corners: the line leaves the rectangle both ways, so fall back to the chart.
  const auto in_chart = [&](double tau) { return model_->in_chart(surface_->F(u + tau * dir[0], v + tau * dir[1])); };
  if (in_chart(-2 * h) && in_chart(2 * h)) return num::diff5(along, h);
  if (in_chart(4 * h)) return num::diff5_onesided(along, h);
  if (in_chart(-4 * h)) return num::diff5_onesided(along, -h);
  throw DomainError("no tangential stencil fits inside the chart");
}

double SurfaceCalculus::alpha(double u, double v) const { return local(u, v).alpha; }

double SurfaceCalculus::H(double u, double v) const {
  const LocalFrame lf = local(u, v);
  if (lf.singular) throw SingularPointError("p-mean curvature requested at a singular point");
  const double c1 = lf.c1, c2 = lf.c2;
  // Rotation angle of e1 relative to its value at (u, v).
  SurfaceField phi = [&](double uu, double vv) {
    const LocalFrame q = local(uu, vv);
    return std::atan2(c1 * q.c2 - c2 * q.c1, c1 * q.c1 + c2 * q.c2);
  };
  const ConnectionForm w = model_->omega(lf.p);
  return e1(phi, u, v) + c1 * w.onX + c2 * w.onY;
}

double SurfaceCalculus::H_covariant(double u, double v) const {
  const LocalFrame lf = local(u, v);
  if (lf.singular) throw SingularPointError("p-mean curvature requested at a singular point");
  if (surface_->has_level_set()) {
    auto e1_field = [this](const Vec3& q) { return level_set_frame(q).e1; };
    const TangentVector d = covariant_derivative(*model_, TangentVector(lf.p, lf.e1), e1_field);
    const Vec3 comps = model_->coframe(lf.p) * d.components();
    return -lf.c2 * comps[0] + lf.c1 * comps[1];
  }
  const double dc1 = e1([&](double uu, double vv) { return local(uu, vv).c1; }, u, v);
  const double dc2 = e1([&](double uu, double vv) { return local(uu, vv).c2; }, u, v);
  const ConnectionForm w = model_->omega(lf.p);
  return -lf.c2 * dc1 + lf.c1 * dc2 + lf.c1 * w.onX + lf.c2 * w.onY;
}

double SurfaceCalculus::e1_alpha(double u, double v) const {
  return e1([this](double uu, double vv) { return local(uu, vv).alpha; }, u, v);
}

double SurfaceCalculus::W(double u, double v) const { return model_->webster_W(surface_->F(u, v)); }

cplx SurfaceCalculus::A11(double u, double v) const { return model_->torsion_A11(surface_->F(u, v)); }

double SurfaceCalculus::h10(double u, double v) const {
  const double a = alpha(u, v);
  return e1_alpha(u, v) + 0.5 * a * a - A11(u, v).imag() + 0.25 * W(u, v);
}

double SurfaceCalculus::H_cr(double u, double v) const {
  const double h = H(u, v);
  return h10(u, v) + h * h / 6.0;
}

FramePointData SurfaceCalculus::point(double u, double v) const {
  const LocalFrame lf = local(u, v);
  FramePointData d;
  d.p = lf.p;
  d.e1 = lf.e1;
  d.e2 = lf.e2;
  d.alpha = lf.alpha;
  d.area2form = lf.area2form;
  d.singular = lf.singular;
  if (!lf.singular) {
    d.H = H(u, v);
    d.H_cr = h10(u, v) + d.H * d.H / 6.0;
  }
  return d;
}

LevelSetFrame SurfaceCalculus::level_set_frame(const Vec3& p) const {
  if (!surface_->has_level_set()) throw PreconditionError("surface " + surface_->label + " has no defining function");
  if (!model_->in_chart(p)) throw DomainError("level-set frame requested outside the chart");
  const Frame fr = model_->frame(p);
  const Vec3 g = surface_->level_gradient(p);
  const double Xu = g.dot(fr.X), Yu = g.dot(fr.Y), Tu = g.dot(fr.T);
  LevelSetFrame out;
  out.grad_b_norm = std::hypot(Xu, Yu);
  out.singular = out.grad_b_norm < surface_->singular_eps;
  if (out.grad_b_norm == 0.0) return out;
  const double s1 = Xu / out.grad_b_norm, s2 = Yu / out.grad_b_norm;
  out.e2 = s1 * fr.X + s2 * fr.Y;
  out.e1 = s2 * fr.X - s1 * fr.Y;
  out.alpha = -Tu / out.grad_b_norm;
  return out;
}

FramePointData legendrian_frame(const SurfaceCalculus& sc, double u, double v) { return sc.point(u, v); }
double derivation_alpha(const SurfaceCalculus& sc, double u, double v) {
  const LocalFrame lf = sc.local(u, v);
  if (lf.singular) throw SingularPointError("derivation function is undefined at a singular point");
  return lf.alpha;
}
double p_mean_curvature(const SurfaceCalculus& sc, double u, double v) { return sc.H(u, v); }
double h_cr(const SurfaceCalculus& sc, double u, double v) { return sc.H_cr(u, v); }
double tangential_derivative(const SurfaceCalculus& sc, double u, double v, Direction d, const SurfaceField& f) {
  return sc.derivative(d, f, u, v);
}

}  // namespace crsurf
