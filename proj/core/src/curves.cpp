#include "crsurf/model.hpp"

// pchip.hpp (Boost 1.74) calls isnan unqualified.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>

#include <cmath>
#include <numbers>
#include <sstream>

namespace crsurf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kArclengthPanels = 4096;

double wrap_period(double s, double L) {
  double r = std::fmod(s, L);
  return r < 0 ? r + L : r;
}

class CircleCurve final : public GeneratingCurve {
 public:
  explicit CircleCurve(double r) : r_(r) {}

  double period() const override { return kTwoPi * r_; }

  CurveSample at(double s) const override {
    const double phi = s / r_;
    CurveSample c;
    c.xi = r_ * std::cos(phi);
    c.eta = r_ * std::sin(phi);
    c.dxi = -std::sin(phi);
    c.deta = std::cos(phi);
    c.kappa = 1.0 / r_;
    return c;
  }

  std::string name() const override {
    std::ostringstream os;
    os << "circle:" << r_;
    return os.str();
  }

 private:
  double r_;
};

}  // namespace

EllipseCurve::EllipseCurve(double a, double b) : a_(a), b_(b) {
  auto speed = [this](double t) {
    const double st = std::sin(t), ct = std::cos(t);
    return std::sqrt(a_ * a_ * st * st + b_ * b_ * ct * ct);
  };
  t_nodes_.resize(kArclengthPanels + 1);
  s_nodes_.resize(kArclengthPanels + 1);
  const double h = kTwoPi / kArclengthPanels;
  double s = 0.0;
  for (int i = 0; i <= kArclengthPanels; ++i) {
    const double t = i * h;
    if (i > 0) s += h / 6.0 * (speed(t - h) + 4.0 * speed(t - 0.5 * h) + speed(t));
    t_nodes_[i] = t;
    s_nodes_[i] = s;
  }
  length_ = s;
  auto inverse = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
      std::vector<double>(s_nodes_), std::vector<double>(t_nodes_));
  t_of_s_ = [inverse](double x) { return (*inverse)(x); };
}

double EllipseCurve::arclength(double t) const {
  const double h = kTwoPi / kArclengthPanels;
  const int k = std::clamp(static_cast<int>(std::floor(t / h)), 0, kArclengthPanels - 1);
  const double t0 = t_nodes_[k];
  auto speed = [this](double u) {
    const double su = std::sin(u), cu = std::cos(u);
    return std::sqrt(a_ * a_ * su * su + b_ * b_ * cu * cu);
  };
  const double d = t - t0;
  return s_nodes_[k] + d / 6.0 * (speed(t0) + 4.0 * speed(t0 + 0.5 * d) + speed(t));
}

double EllipseCurve::parameter_at(double s) const {
  const double sw = wrap_period(s, length_);
  double t = t_of_s_(sw);
  // Newton polish against the panel quadrature: keeps |s(t) - s| below 1e-9.
  for (int it = 0; it < 3; ++it) {
    const double st = std::sin(t), ct = std::cos(t);
    t -= (arclength(t) - sw) / std::sqrt(a_ * a_ * st * st + b_ * b_ * ct * ct);
  }
  return t;
}

CurveSample EllipseCurve::at_parameter(double t) const {
  const double a2 = a_ * a_, b2 = b_ * b_;
  const double st = std::sin(t), ct = std::cos(t);
  const double g = a2 * st * st + b2 * ct * ct;
  const double g1 = (a2 - b2) * std::sin(2.0 * t);
  const double g2 = 2.0 * (a2 - b2) * std::cos(2.0 * t);
  const double ab = a_ * b_;

  const double k = ab * std::pow(g, -1.5);
  const double k_t = -1.5 * ab * std::pow(g, -2.5) * g1;
  const double k_tt = ab * (3.75 * std::pow(g, -3.5) * g1 * g1 - 1.5 * std::pow(g, -2.5) * g2);
  const double s_t = std::sqrt(g);
  const double s_tt = g1 / (2.0 * s_t);

  CurveSample c;
  c.xi = a_ * ct;
  c.eta = b_ * st;
  c.dxi = -a_ * st / s_t;
  c.deta = b_ * ct / s_t;
  c.kappa = k;
  c.dkappa = k_t / s_t;
  c.ddkappa = (k_tt * s_t - k_t * s_tt) / (s_t * s_t * s_t);
  return c;
}

CurveSample EllipseCurve::at(double s) const { return at_parameter(parameter_at(s)); }

std::string EllipseCurve::name() const {
  std::ostringstream os;
  os << "ellipse:" << a_ << "," << b_;
  return os.str();
}

CurvePtr circle_curve(double r) {
  if (!(r > 0.0)) throw DomainError("circle radius must be positive");
  return std::make_shared<CircleCurve>(r);
}

std::shared_ptr<const EllipseCurve> ellipse_curve(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("ellipse axes must be positive");
  return std::make_shared<EllipseCurve>(a, b);
}

}  // namespace crsurf
