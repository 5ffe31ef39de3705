#pragma once

#include <crsurf/numerics.hpp>
#include <crsurf/verify.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace crsurf::testing {

inline constexpr double kClifford = 0.70710678118654752440;
inline const double kTStar = 4.0 - std::sqrt(15.0);

// Random chart point of a model, away from chart edges.
inline Vec3 random_point(const ModelGeometry& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double tau = 2.0 * std::numbers::pi;
  const std::string n = m.name();
  if (n == "disk-bundle") {
    const double r = 0.95 * std::sqrt(U(rng)), a = tau * U(rng);
    return {r * std::cos(a), r * std::sin(a), -3.0 + 6.0 * U(rng)};
  }
  if (n == "heisenberg") return {-2.0 + 4.0 * U(rng), -2.0 + 4.0 * U(rng), -2.0 + 4.0 * U(rng)};
  if (n.rfind("rossi:", 0) == 0) return {0.05 + 0.9 * U(rng), tau * U(rng), tau * U(rng)};
  const GeneratingCurve* c = torus_curve(m);
  return {c->period() * U(rng), tau * U(rng), tau * U(rng)};
}

// Bump whose support stays inside non-periodic parameter ranges.
inline Bump random_bump(const ParamDomain& D, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double eu = D.u1 - D.u0, ev = D.v1 - D.v0;
  double w = 0.6;
  if (!D.periodic_u) w = std::min(w, 0.3 * eu);
  if (!D.periodic_v) w = std::min(w, 0.3 * ev);
  w *= 0.6 + 0.4 * U(rng);
  auto centre = [&](double a, double b, bool periodic) {
    return periodic ? a + (b - a) * U(rng) : a + w + (b - a - 2 * w) * U(rng);
  };
  return {centre(D.u0, D.u1, D.periodic_u), centre(D.v0, D.v1, D.periodic_v), w};
}

inline Deformation random_deformation(const ParamDomain& D, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Deformation d;
  d.bump = random_bump(D, rng);
  d.f_amp = U(rng);
  d.g_amp = U(rng);
  if (std::max(std::abs(d.f_amp), std::abs(d.g_amp)) < 0.1) d.f_amp = 1.0;
  return d;
}

template <class F>
double max_over(const std::vector<std::pair<double, double>>& nodes, F&& f) {
  double m = 0.0;
  for (const auto& [u, v] : nodes) {
    const double x = std::abs(f(u, v));
    m = std::max(m, std::isnan(x) ? HUGE_VAL : x);
  }
  return m;
}

}  // namespace crsurf::testing
