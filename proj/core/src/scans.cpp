#include "crsurf/verify.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crsurf {

RossiScan scan_rossi_E2(std::span<const double> c_values, double t, int grid) {
  RossiScan scan;
  scan.t = t;
  scan.hypothesis_holds = t <= 0.0 || (1.0 - 4.0 * t - t * t > 0.0);
  if (!scan.hypothesis_holds) {
    std::ostringstream os;
    os << "t = " << t << " satisfies neither t <= 0 nor 1 - 4t - t^2 > 0; scanning anyway";
    scan.warning = os.str();
  }
  // The chart margin shrinks so that tori close to either circle stay inside it.
  double margin = 1e-3;
  for (double c : c_values) margin = std::min(margin, 0.5 * std::min(c, 1.0 - c));
  if (!(margin > 0.0)) throw DomainError("scan values must lie in (0, 1)");
  const ModelPtr model = make_rossi_sphere(t, margin);
  scan.rows.resize(c_values.size());
  for (std::size_t i = 0; i < c_values.size(); ++i) {
    const SurfaceCalculus sc(model, rossi_sigma_surface(c_values[i]));
    const QuadratureResult q = integrate(sc, Functional::E2, grid, grid);
    scan.rows[i] = {c_values[i], q.value, q.error_estimate};
  }
  return scan;
}

bool scan_tails_diverge(const RossiScan& scan, int k) {
  const auto& r = scan.rows;
  const int n = static_cast<int>(r.size());
  if (n < 2 * k) return false;
  for (int i = 0; i + 1 < k; ++i) {
    if (!(r[i].E2 < r[i + 1].E2)) return false;                  // low tail falls as c -> 0
    if (!(r[n - k + i].E2 < r[n - k + i + 1].E2)) return false;  // high tail rises as c -> 1
  }
  return r[0].E2 < 0.0 && r[n - 1].E2 > 0.0 && std::abs(r[0].E2) > std::abs(r[k - 1].E2) &&
         std::abs(r[n - 1].E2) > std::abs(r[n - k].E2);
}

double ellipse_slice_hcr(const ModelPtr& torus, const EllipseCurve& curve, double t) {
  const SurfaceCalculus sc(torus, torus_slice_surface(curve.arclength(t), curve.period()));
  return sc.H_cr(1.0, 1.0);
}

EllipseRoot ellipse_hcr_root(double a, double b, double tol) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("ellipse semi-axes must be positive");
  if (!(b * b / (a * a) < 3.0 / 8.0)) throw PreconditionError("ellipse hypothesis b^2/a^2 < 3/8 violated");
  const auto curve = ellipse_curve(a, b);
  const ModelPtr torus = make_torus(curve);
  const double half_pi = std::numbers::pi / 2;

  EllipseRoot r;
  r.hcr_at_0 = ellipse_slice_hcr(torus, *curve, 0.0);
  r.hcr_at_half_pi = ellipse_slice_hcr(torus, *curve, half_pi);
  if (!(r.hcr_at_0 > 0.0 && r.hcr_at_half_pi < 0.0))
    throw DomainError("H_cr does not change sign between the ellipse vertices");

  auto f = [&](double t) { return ellipse_slice_hcr(torus, *curve, t); };
  auto done = [tol](double lo, double hi) { return hi - lo < tol; };
  const auto [lo, hi] = boost::math::tools::bisect(f, 0.0, half_pi, done);
  r.t0 = 0.5 * (lo + hi);
  r.hcr_at_root = f(r.t0);
  auto speed = [a, b](double t) {
    const double st = std::sin(t), ct = std::cos(t);
    return std::sqrt(a * a * st * st + b * b * ct * ct);
  };
  r.s0 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(speed, 0.0, r.t0, 15, 1e-14);
  return r;
}

SpotCheck spot_check_no_zero_E1(const std::string& model_spec, std::span<const double> family, int grid) {
  SpotCheck out;
  const ModelPtr model = parse_model(model_spec);
  std::function<SurfacePtr(double)> member;
  if (model_spec.rfind("rossi", 0) == 0) {
    const double t = rossi_parameter(*model);
    if (!(t > -1.0 && t < 4.0 - std::sqrt(15.0))) {
      out.skipped = true;
      out.warning = "Rossi parameter outside (-1, 4 - sqrt(15)); family skipped";
      return out;
    }
    member = [](double c) { return rossi_sigma_surface(c); };
  } else if (model_spec.rfind("torus-circle", 0) == 0) {
    const double period = torus_curve(*model)->period();
    member = [period](double c) { return torus_slice_surface(c, period); };
  } else {
    out.skipped = true;
    out.warning = "spot check covers Rossi spheres and circle tori only";
    return out;
  }
  out.min_E1 = std::numeric_limits<double>::infinity();
  for (double c : family) {
    const SurfaceCalculus sc(model, member(c));
    const double e1 = integrate_once(sc, Functional::E1, grid, grid).value;
    out.samples.emplace_back(c, e1);
    out.min_E1 = std::min(out.min_E1, e1);
  }
  return out;
}

}  // namespace crsurf
