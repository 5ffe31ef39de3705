#include "crsurf/surface.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crsurf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> spec_numbers(const std::string& spec, std::size_t count) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("surface spec '" + spec + "' needs arguments");
  std::vector<double> out;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad number '" + item + "' in '" + spec + "'");
    out.push_back(v);
  }
  if (out.size() != count)
    throw std::invalid_argument("surface spec '" + spec + "' expects " + std::to_string(count) + " argument(s)");
  return out;
}

bool xyt_chart(const ModelGeometry& m) { return m.name() == "disk-bundle" || m.name() == "heisenberg"; }

}  // namespace

SurfacePtr plane_surface(double a, double b, double c, double collar, double t0, double t1) {
  const double nn = std::hypot(a, b);
  if (!(nn > 0.0)) throw DomainError("plane needs (a, b) != 0");
  const double d = c / nn;
  const double reach = 1.0 - collar;
  if (!(std::abs(d) < reach)) throw DomainError("plane does not meet the disk inside the collar");
  const double half = std::sqrt(reach * reach - d * d);
  const Vec3 foot(a * c / (nn * nn), b * c / (nn * nn), 0.0);
  const Vec3 w(-b / nn, a / nn, 0.0);

  auto s = std::make_shared<SurfacePatch>();
  std::ostringstream os;
  os << "plane:" << a << "," << b << "," << c;
  s->label = os.str();
  s->F = [foot, w](double sigma, double t) { return Vec3(foot + sigma * w + Vec3(0, 0, t)); };
  s->dF = [w](double, double) { return std::make_pair(w, Vec3(0, 0, 1)); };
  s->level = [a, b, c](const Vec3& p) { return a * p[0] + b * p[1] - c; };
  s->level_gradient = [a, b](const Vec3&) { return Vec3(a, b, 0); };
  s->domain = {-half, half, t0, t1, false, false};
  return s;
}

SurfacePtr cylinder_surface(double rho, double t0, double t1) {
  if (!(rho > 0.0)) throw DomainError("cylinder radius must be positive");
  auto s = std::make_shared<SurfacePatch>();
  std::ostringstream os;
  os << "cylinder:" << rho;
  s->label = os.str();
  s->F = [rho](double th, double t) { return Vec3(rho * std::cos(th), rho * std::sin(th), t); };
  s->dF = [rho](double th, double) {
    return std::make_pair(Vec3(-rho * std::sin(th), rho * std::cos(th), 0), Vec3(0, 0, 1));
  };
  s->level = [rho](const Vec3& p) { return std::hypot(p[0], p[1]) - rho; };
  s->level_gradient = [](const Vec3& p) {
    const double r = std::hypot(p[0], p[1]);
    return Vec3(p[0] / r, p[1] / r, 0);
  };
  s->domain = {0.0, kTwoPi, t0, t1, true, false};
  return s;
}

SurfacePtr graph_t2_surface(double c, double r0, double r1) {
  if (!(c > 0.0)) throw DomainError("graph-t2 needs c > 0");
  if (!(r0 > 0.0 && r1 > r0)) throw DomainError("graph-t2 annulus must satisfy 0 < r0 < r1");
  const double t = std::sqrt(c);
  auto s = std::make_shared<SurfacePatch>();
  std::ostringstream os;
  os << "graph-t2:" << c;
  s->label = os.str();
  s->F = [t](double th, double r) { return Vec3(r * std::cos(th), r * std::sin(th), t); };
  s->dF = [](double th, double r) {
    return std::make_pair(Vec3(-r * std::sin(th), r * std::cos(th), 0), Vec3(std::cos(th), std::sin(th), 0));
  };
  s->level = [c](const Vec3& p) { return c - p[2] * p[2]; };
  s->level_gradient = [](const Vec3& p) { return Vec3(0, 0, -2.0 * p[2]); };
  s->domain = {0.0, kTwoPi, r0, r1, true, false};
  return s;
}

SurfacePtr rossi_sigma_surface(double c) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("rossi-sigma needs 0 < c < 1");
  auto s = std::make_shared<SurfacePatch>();
  std::ostringstream os;
  os << "rossi-sigma:" << c;
  s->label = os.str();
  s->F = [c](double p1, double p2) { return Vec3(c, p1, p2); };
  s->dF = [](double, double) { return std::make_pair(Vec3(0, 1, 0), Vec3(0, 0, 1)); };
  s->level = [c](const Vec3& p) { return p[0] - c; };
  s->level_gradient = [](const Vec3&) { return Vec3(1, 0, 0); };
  s->domain = {0.0, kTwoPi, 0.0, kTwoPi, true, true};
  return s;
}

SurfacePtr torus_slice_surface(double s0, double period) {
  if (!(period > 0.0)) throw DomainError("torus slice needs a positive curve period");
  auto s = std::make_shared<SurfacePatch>();
  std::ostringstream os;
  os << "torus-slice:" << s0;
  s->label = os.str();
  s->F = [s0](double y, double x) { return Vec3(s0, x, y); };
  s->dF = [](double, double) { return std::make_pair(Vec3(0, 0, 1), Vec3(0, 1, 0)); };
  s->level = [s0, period](const Vec3& p) { return std::remainder(s0 - p[0], period); };
  s->level_gradient = [](const Vec3&) { return Vec3(-1, 0, 0); };
  s->domain = {0.0, kTwoPi, 0.0, kTwoPi, true, true};
  return s;
}

SurfacePtr parse_surface(const std::string& spec, const ModelGeometry& model) {
  const std::string head = spec.substr(0, spec.find(':'));
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument("surface '" + spec + "' needs " + what + " (got " + model.name() + ")");
  };
  if (head == "plane") {
    require(xyt_chart(model), "an (x, y, t) model");
    const auto v = spec_numbers(spec, 3);
    return plane_surface(v[0], v[1], v[2]);
  }
  if (head == "cylinder") {
    require(xyt_chart(model), "an (x, y, t) model");
    return cylinder_surface(spec_numbers(spec, 1)[0]);
  }
  if (head == "graph-t2") {
    require(xyt_chart(model), "an (x, y, t) model");
    return graph_t2_surface(spec_numbers(spec, 1)[0]);
  }
  if (head == "rossi-sigma") {
    require(model.name().rfind("rossi:", 0) == 0, "a Rossi sphere model");
    return rossi_sigma_surface(spec_numbers(spec, 1)[0]);
  }
  if (head == "torus-slice") {
    const GeneratingCurve* curve = torus_curve(model);
    require(curve != nullptr, "a torus model");
    return torus_slice_surface(spec_numbers(spec, 1)[0], curve->period());
  }
  throw std::invalid_argument("unknown surface spec '" + spec + "'");
}

std::vector<std::string> surface_catalog() {
  return {"plane:a,b,c", "cylinder:rho", "graph-t2:c", "rossi-sigma:c", "torus-slice:c"};
}

}  // namespace crsurf
