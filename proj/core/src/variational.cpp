#include "crsurf/variational.hpp"

#include <algorithm>
#include <cmath>

namespace crsurf {

namespace {

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

struct Invariants {
  bool constant_W = true;
  bool torsion_free = true;
  bool torsion_imaginary = true;
};

// Samples W and A near a 3x3 grid of surface points, stepping off the surface
// along X, Y and T so that model-level constancy is tested.
Invariants sample_invariants(const SurfaceCalculus& sc, double u, double v) {
  const ModelGeometry& M = sc.model();
  const ParamDomain& D = sc.surface().domain;
  const Vec3 p0 = sc.surface().F(u, v);
  const double W0 = M.webster_W(p0);
  const cplx A0 = M.torsion_A11(p0);
  Invariants inv;
  auto probe = [&](const Vec3& p) {
    if (!M.in_chart(p)) return;
    const cplx A = M.torsion_A11(p);
    if (std::abs(M.webster_W(p) - W0) > 1e-10) inv.constant_W = false;
    if (std::abs(A) > 1e-10) inv.torsion_free = false;
    if (std::abs(A.real()) > 1e-10 || std::abs(A - A0) > 1e-10) inv.torsion_imaginary = false;
  };
  probe(p0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 p = sc.surface().F(D.u0 + (D.u1 - D.u0) * (0.1 + 0.4 * i), D.v0 + (D.v1 - D.v0) * (0.1 + 0.4 * j));
      if (!M.in_chart(p)) continue;
      probe(p);
      const Frame fr = M.frame(p);
      for (const Vec3& w : {fr.X, fr.Y, fr.T}) {
        const double s = 0.05 / std::max(w.norm(), 1e-12);
        probe(p + s * w);
        probe(p - s * w);
      }
    }
  }
  return inv;
}

void require_cyz(const SurfaceCalculus& sc, double u, double v) {
  const Invariants inv = sample_invariants(sc, u, v);
  if (!inv.constant_W || !inv.torsion_free)
    throw PreconditionError("CYZ form inapplicable: " + sc.model().name() + " lacks constant W and vanishing torsion");
}

SurfaceField alpha_field(const SurfaceCalculus& sc) {
  return [&sc](double u, double v) { return sc.local(u, v).alpha; };
}

}  // namespace

ELIntermediates el_intermediates(const SurfaceCalculus& sc, double u, double v) {
  const LocalFrame lf = sc.local(u, v);
  if (lf.singular) throw SingularPointError("residual requested at a singular point");
  const ModelGeometry& M = sc.model();
  ELIntermediates r;
  r.alpha = lf.alpha;
  r.W = M.webster_W(lf.p);
  r.A11 = M.torsion_A11(lf.p);
  r.extras = M.density_extras(lf.p);
  r.e1alpha = sc.e1_alpha(u, v);
  const double H = sc.H(u, v);
  const double a = r.alpha, ImA = r.A11.imag();
  // Raised torsion under the unitary frame: A^1_1bar = conj(A_11).
  const double ReAu = r.A11.real(), ImAu = -ImA;

  r.h11 = H;
  r.h10 = r.e1alpha + 0.5 * a * a - ImA + 0.25 * r.W;
  r.H_cr = r.h10 + H * H / 6.0;

  const SurfaceField Hf = sc.field(&SurfaceCalculus::H);
  r.e1H = sc.e1(Hf, u, v);
  r.VH = sc.V(Hf, u, v);
  r.Vh10 = sc.V(sc.field(&SurfaceCalculus::h10), u, v);
  r.Valpha = sc.V(alpha_field(sc), u, v);

  r.h111 = r.e1H - 2 * a * H + 3 * ReAu;
  r.h110 = r.VH - 3 * a * r.e1alpha - 3 * a * a * a - 1.5 * a * r.W + 3 * a * ImAu + 3 * a * ImA + 3 * r.extras.real();
  r.h100 = r.Vh10 + a * H * r.e1alpha + a * a * a * H + 0.5 * a * H * r.W - a * H * ImAu - a * H * ImA -
           H * r.extras.real();
  r.h00 = r.Valpha + r.extras.imag() - a * ReAu;

  const double hcf = r.h10 * r.h111 + H * H * r.h111 / 3.0 + H * r.h110 + 1.5 * r.h100;
  r.frak_f = hcf / std::abs(r.H_cr);
  return r;
}

double hcr_frak_f_expanded(const SurfaceCalculus& sc, double u, double v) {
  const LocalFrame lf = sc.local(u, v);
  if (lf.singular) throw SingularPointError("residual requested at a singular point");
  const ModelGeometry& M = sc.model();
  const double a = lf.alpha;
  const double H = sc.H(u, v);
  const double e1a = sc.e1_alpha(u, v);
  const double W = M.webster_W(lf.p);
  const cplx A = M.torsion_A11(lf.p);
  const double ReAu = A.real(), ImAu = -A.imag(), ImA = A.imag();
  const double ReX = M.density_extras(lf.p).real();

  const SurfaceField Hf = sc.field(&SurfaceCalculus::H);
  const double e1H = sc.e1(Hf, u, v);
  const double VH = sc.V(Hf, u, v);
  const double Ve1a = sc.V(sc.field(&SurfaceCalculus::e1_alpha), u, v);
  const double Va = sc.V(alpha_field(sc), u, v);
  const double VImA = sc.V([&sc](double uu, double vv) { return sc.A11(uu, vv).imag(); }, u, v);
  const double VW = sc.V(sc.field(&SurfaceCalculus::W), u, v);
  const double V_h10 = Ve1a + a * Va - VImA + 0.25 * VW;

  return (e1a + 0.5 * a * a + H * H / 3.0 - ImA + 0.25 * W) * (e1H - 2 * a * H + 3 * ReAu)  //
         + H * VH - 3 * a * H * e1a - 3 * a * a * a * H - 1.5 * a * H * W                   //
         + 3 * a * H * ImAu + 3 * a * H * ImA + 3 * H * ReX                                 //
         + 1.5 * V_h10 + 1.5 * a * H * e1a + 1.5 * a * a * a * H                            //
         + 0.75 * a * H * W - 1.5 * a * H * ImAu - 1.5 * a * H * ImA - 1.5 * H * ReX;
}

double el1_general(const SurfaceCalculus& sc, double u, double v, double tol_hcr) {
  const ELIntermediates c = el_intermediates(sc, u, v);
  if (!(std::abs(c.H_cr) > tol_hcr)) throw UndefinedResidualError("residual undefined (H_cr vanishes)");
  SurfaceField g = [&sc](double uu, double vv) {
    const ELIntermediates q = el_intermediates(sc, uu, vv);
    return std::sqrt(std::abs(q.H_cr)) * q.frak_f;
  };
  const double root = std::sqrt(std::abs(c.H_cr));
  const double bracket = 9 * c.h00 + 6 * c.h11 * c.h10 + 2.0 / 3.0 * c.h11 * c.h11 * c.h11;
  return sc.e1(g, u, v) + 1.5 * c.alpha * root * c.frak_f + 0.5 * sgn(c.H_cr) * root * bracket;
}

namespace {

struct CyzPoint {
  double H_cr = 0;
  double hcf = 0;  // |H_cr| f
  double alpha = 0;
  double bracket = 0;
};

CyzPoint cyz_point(const SurfaceCalculus& sc, double u, double v) {
  const LocalFrame lf = sc.local(u, v);
  if (lf.singular) throw SingularPointError("residual requested at a singular point");
  const double a = lf.alpha;
  const double W = sc.model().webster_W(lf.p);
  const double H = sc.H(u, v);
  const double e1a = sc.e1_alpha(u, v);
  const SurfaceField Hf = sc.field(&SurfaceCalculus::H);
  const double e1H = sc.e1(Hf, u, v);
  const double VH = sc.V(Hf, u, v);
  const double Va = sc.V(alpha_field(sc), u, v);
  const double Vq = sc.V(
      [&sc](double uu, double vv) {
        const double aa = sc.local(uu, vv).alpha;
        return sc.e1_alpha(uu, vv) + 0.5 * aa * aa;
      },
      u, v);
  CyzPoint p;
  p.alpha = a;
  p.H_cr = e1a + 0.5 * a * a + 0.25 * W + H * H / 6.0;
  p.hcf = e1H * (e1a + 0.5 * a * a + H * H / 3.0 + 0.25 * W) + H * VH + 1.5 * Vq - 3.5 * a * H * e1a -
          2.5 * a * a * a * H - 2.0 / 3.0 * a * H * H * H - 1.25 * a * H * W;
  p.bracket = 9 * Va + 6 * H * (e1a + 0.5 * a * a + 0.25 * W) + 2.0 / 3.0 * H * H * H;
  return p;
}

}  // namespace

double el1_cyz(const SurfaceCalculus& sc, double u, double v, double tol_hcr) {
  require_cyz(sc, u, v);
  const CyzPoint c = cyz_point(sc, u, v);
  if (!(std::abs(c.H_cr) > tol_hcr)) throw UndefinedResidualError("residual undefined (H_cr vanishes)");
  SurfaceField g = [&sc](double uu, double vv) {
    const CyzPoint q = cyz_point(sc, uu, vv);
    return q.hcf / std::sqrt(std::abs(q.H_cr));
  };
  const double root = std::sqrt(std::abs(c.H_cr));
  return sc.e1(g, u, v) + 1.5 * c.alpha * c.hcf / root + 0.5 * sgn(c.H_cr) * root * c.bracket;
}

namespace {

double el2_braces(const SurfaceCalculus& sc, double u, double v, double ImA) {
  const LocalFrame lf = sc.local(u, v);
  if (lf.singular) throw SingularPointError("residual requested at a singular point");
  const double a = lf.alpha;
  const double W = sc.model().webster_W(lf.p);
  const double H = sc.H(u, v);
  const double e1a = sc.e1_alpha(u, v);
  const SurfaceField Hf = sc.field(&SurfaceCalculus::H);
  const SurfaceField e1Hf = [&sc, &Hf](double uu, double vv) { return sc.e1(Hf, uu, vv); };
  const SurfaceField VHf = [&sc, &Hf](double uu, double vv) { return sc.V(Hf, uu, vv); };
  const double e1H = sc.e1(Hf, u, v);
  const double e1e1H = sc.e1(e1Hf, u, v);
  const double e1VH = sc.e1(VHf, u, v);
  const double a2 = a * a, H2 = H * H;
  return H * e1e1H + 3 * e1VH + e1H * e1H + H2 * H2 / 3.0       //
         + 3 * e1a * e1a + 12 * a2 * e1a + 12 * a2 * a2         //
         - a * H * e1H + 2 * H2 * e1a + 5 * a2 * H2             //
         + 1.5 * W * (e1a + 2.0 / 3.0 * H2 + 5 * a2 + 0.5 * W)  //
         + 6 * ImA * (0.5 * ImA - e1a - 2 * a2 - 0.625 * W - H2 / 6.0);
}

}  // namespace

double el2_constant(const SurfaceCalculus& sc, double u, double v) {
  const Invariants inv = sample_invariants(sc, u, v);
  if (!inv.constant_W || !inv.torsion_imaginary)
    throw PreconditionError("E2 residual needs constant W and constant imaginary torsion on " + sc.model().name());
  const double ImA = sc.A11(u, v).imag();
  return 4.0 / 9.0 * el2_braces(sc, u, v, ImA);
}

double el2_cyz(const SurfaceCalculus& sc, double u, double v) {
  require_cyz(sc, u, v);
  return 4.0 / 9.0 * el2_braces(sc, u, v, 0.0);
}

double Bump::operator()(const ParamDomain& D, double u, double v) const {
  auto wrap = [](double d, double period) { return d - period * std::round(d / period); };
  double du = u - u0, dv = v - v0;
  if (D.periodic_u) du = wrap(du, D.u1 - D.u0);
  if (D.periodic_v) dv = wrap(dv, D.v1 - D.v0);
  const double r2 = (du * du + dv * dv) / (width * width);
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

SurfacePtr deform_surface(const SurfaceCalculus& sc, const Deformation& d, double t) {
  auto out = std::make_shared<SurfacePatch>();
  const SurfacePatch& base = sc.surface();
  out->label = base.label + "~deformed";
  out->domain = base.domain;
  out->singular_eps = base.singular_eps;
  // The calculus object outlives the patch only through these shared pointers.
  const ModelPtr model = sc.model_ptr();
  const SurfacePtr surf = sc.surface_ptr();
  const SurfaceOptions opts = sc.options();
  out->F = [model, surf, opts, d, t](double u, double v) {
    const Vec3 p = surf->F(u, v);
    const double b = d.bump(surf->domain, u, v);
    if (b == 0.0) return p;
    const SurfaceCalculus local_sc(model, surf, opts);
    const LocalFrame lf = local_sc.local(u, v);
    const Vec3 T = model->frame(p).T;
    return Vec3(p + t * b * (d.f_amp * lf.e2 + d.g_amp * T));
  };
  return out;
}

namespace {

void require_regular_support(const SurfaceCalculus& sc, const Bump& b) {
  const ParamDomain& D = sc.surface().domain;
  const double reach = b.width + 4 * sc.options().tangential_step;
  const int n = 24;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      double u = b.u0 - reach + 2 * reach * i / n;
      double v = b.v0 - reach + 2 * reach * j / n;
      if (!D.periodic_u && (u < D.u0 || u > D.u1)) continue;
      if (!D.periodic_v && (v < D.v0 || v > D.v1)) continue;
      if (sc.local(u, v).singular) throw SingularPointError("deformation touches the singular set");
    }
  }
}

}  // namespace

VariationResult first_variation(const SurfaceCalculus& sc, Functional which, const Deformation& d, int n_u, int n_v) {
  if (!(d.delta > 0.0)) throw std::invalid_argument("deformation step must be positive");
  if (!(d.bump.width > 0.0)) throw std::invalid_argument("bump width must be positive");
  const double sup = std::max(std::abs(d.f_amp), std::abs(d.g_amp));
  if (!(sup > 0.0)) throw std::invalid_argument("deformation is identically zero");
  require_regular_support(sc, d.bump);

  Deformation unit = d;
  unit.f_amp /= sup;
  unit.g_amp /= sup;
  // Outside the support the deformed energies agree node by node, so only the
  // support box is integrated.
  const ParamDomain& D = sc.surface().domain;
  ParamDomain box;
  box.u0 = d.bump.u0 - d.bump.width;
  box.u1 = d.bump.u0 + d.bump.width;
  box.v0 = d.bump.v0 - d.bump.width;
  box.v1 = d.bump.v0 + d.bump.width;
  if (D.periodic_u && 2 * d.bump.width >= D.u1 - D.u0) {
    box.u0 = D.u0, box.u1 = D.u1, box.periodic_u = true;
  } else if (!D.periodic_u) {
    box.u0 = std::max(box.u0, D.u0), box.u1 = std::min(box.u1, D.u1);
  }
  if (D.periodic_v && 2 * d.bump.width >= D.v1 - D.v0) {
    box.v0 = D.v0, box.v1 = D.v1, box.periodic_v = true;
  } else if (!D.periodic_v) {
    box.v0 = std::max(box.v0, D.v0), box.v1 = std::min(box.v1, D.v1);
  }
  auto energy = [&](double t) {
    const SurfaceCalculus moved(sc.model_ptr(), deform_surface(sc, unit, t), sc.options());
    return integrate_region(moved, which, box, n_u, n_v).value;
  };
  auto centered = [&](double h) { return (energy(h) - energy(-h)) / (2 * h); };

  VariationResult r;
  r.coarse = centered(d.delta);
  r.fine = centered(0.5 * d.delta);
  r.value = (4 * r.fine - r.coarse) / 3.0;
  return r;
}

}  // namespace crsurf
