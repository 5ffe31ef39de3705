#include "crsurf/functionals.hpp"
#include "crsurf/numerics.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace crsurf {

Functional parse_functional(const std::string& name) {
  if (name == "E1" || name == "e1") return Functional::E1;
  if (name == "E2" || name == "e2") return Functional::E2;
  throw std::invalid_argument("unknown functional '" + name + "' (expected E1 or E2)");
}

const char* functional_name(Functional f) { return f == Functional::E1 ? "E1" : "E2"; }

namespace {

LocalFrame regular_local(const SurfaceCalculus& sc, double u, double v) {
  LocalFrame lf = sc.local(u, v);
  if (lf.singular) throw SingularPointError("density requested at a singular point");
  return lf;
}

}  // namespace

DensityValue density_dA1(const SurfaceCalculus& sc, double u, double v) {
  const LocalFrame lf = regular_local(sc, u, v);
  DensityValue d;
  d.p = lf.p;
  d.area2form = lf.area2form;
  d.H_cr = sc.H_cr(u, v);
  d.dA1_scalar = std::pow(std::abs(d.H_cr), 1.5);
  return d;
}

DensityValue density_dA2(const SurfaceCalculus& sc, double u, double v) {
  const LocalFrame lf = regular_local(sc, u, v);
  DensityValue d;
  d.p = lf.p;
  d.area2form = lf.area2form;
  const double H = sc.H(u, v);
  const double h10 = sc.h10(u, v);
  d.H_cr = h10 + H * H / 6.0;
  d.dA1_scalar = std::pow(std::abs(d.H_cr), 1.5);
  const double Valpha = sc.V([&sc](double uu, double vv) { return sc.local(uu, vv).alpha; }, u, v);
  const cplx extras = sc.model().density_extras(lf.p);
  const double ReA = sc.model().torsion_A11(lf.p).real();
  d.dA2_scalar = Valpha + 2.0 / 3.0 * h10 * H + 2.0 / 27.0 * H * H * H + extras.imag() - lf.alpha * ReA;
  return d;
}

namespace {

num::AxisRule axis_rule(int n, double a, double b, bool periodic) {
  return periodic ? num::midpoint_rule(n, a, b) : num::simpson_rule(n, a, b);
}

}  // namespace

QuadratureResult integrate_once(const SurfaceCalculus& sc, Functional which, int n_u, int n_v) {
  return integrate_region(sc, which, sc.surface().domain, n_u, n_v);
}

QuadratureResult integrate_region(const SurfaceCalculus& sc, Functional which, const ParamDomain& D, int n_u, int n_v) {
  if (n_u < 8 || n_v < 8) throw std::invalid_argument("quadrature grid must be at least 8x8");
  const num::AxisRule ru = axis_rule(n_u, D.u0, D.u1, D.periodic_u);
  const num::AxisRule rv = axis_rule(n_v, D.v0, D.v1, D.periodic_v);
  const int Nu = static_cast<int>(ru.nodes.size()), Nv = static_cast<int>(rv.nodes.size());
  const std::size_t total = static_cast<std::size_t>(Nu) * Nv;

  std::vector<char> singular(total, 0);
  num::parallel_for(total, [&](std::size_t k) {
    const int i = static_cast<int>(k / Nv), j = static_cast<int>(k % Nv);
    singular[k] = sc.local(ru.nodes[i], rv.nodes[j]).singular ? 1 : 0;
  });

  std::vector<char> excluded(total, 0);
  for (int i = 0; i < Nu; ++i) {
    for (int j = 0; j < Nv; ++j) {
      if (!singular[static_cast<std::size_t>(i) * Nv + j]) continue;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          int ii = i + di, jj = j + dj;
          if (D.periodic_u) ii = (ii + Nu) % Nu;
          if (D.periodic_v) jj = (jj + Nv) % Nv;
          if (ii < 0 || ii >= Nu || jj < 0 || jj >= Nv) continue;
          excluded[static_cast<std::size_t>(ii) * Nv + jj] = 1;
        }
      }
    }
  }
  long n_excluded = 0;
  for (char e : excluded) n_excluded += e;
  QuadratureResult out;
  out.n_u = Nu;
  out.n_v = Nv;
  out.nodes = static_cast<long>(total);
  out.excluded_fraction = static_cast<double>(n_excluded) / static_cast<double>(total);
  if (out.excluded_fraction > 0.5)
    throw SingularPointError("surface " + sc.surface().label + " is mostly singular on this grid");

  std::vector<double> terms(total, 0.0);
  num::parallel_for(total, [&](std::size_t k) {
    if (excluded[k]) return;
    const int i = static_cast<int>(k / Nv), j = static_cast<int>(k % Nv);
    const double u = ru.nodes[i], v = rv.nodes[j];
    const DensityValue d = which == Functional::E1 ? density_dA1(sc, u, v) : density_dA2(sc, u, v);
    const double s = which == Functional::E1 ? d.dA1_scalar : d.dA2_scalar;
    terms[k] = s * d.area2form * ru.weights[i] * rv.weights[j];
  });
  out.value = num::pairwise_sum(terms);
  return out;
}

QuadratureResult integrate(const SurfaceCalculus& sc, Functional which, int n_u, int n_v) {
  QuadratureResult fine = integrate_once(sc, which, n_u, n_v);
  if (n_u >= 16 && n_v >= 16) {
    const QuadratureResult coarse = integrate_once(sc, which, n_u / 2, n_v / 2);
    fine.error_estimate = std::abs(fine.value - coarse.value);
  } else {
    fine.error_estimate = std::abs(fine.value);
  }
  return fine;
}

namespace {

double directional(const std::function<double(const Vec3&)>& f, const Vec3& q, const Vec3& w) {
  return num::diff5([&](double tau) { return f(q + tau * w); }, kConformalStep);
}

}  // namespace

ConformalFactor random_conformal_factor(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-0.3, 0.3), wave(-1.5, 1.5), phase(0.0, 6.283185307179586);
  const double c0 = amp(rng);
  double a[2], k[2][3], ph[2];
  for (int j = 0; j < 2; ++j) {
    a[j] = amp(rng);
    for (double& kk : k[j]) kk = wave(rng);
    ph[j] = phase(rng);
  }
  ConformalFactor f;
  f.label = "random:" + std::to_string(seed);
  f.lambda = [=](const Vec3& p) {
    double s = c0;
    for (int j = 0; j < 2; ++j) s += a[j] * std::sin(k[j][0] * p[0] + k[j][1] * p[1] + k[j][2] * p[2] + ph[j]);
    return std::exp(s);
  };
  return f;
}

ConformalFactor parse_conformal_factor(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  std::vector<double> x;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      try {
        x.push_back(std::stod(item, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw std::invalid_argument("bad number '" + item + "' in '" + spec + "'");
    }
  }
  auto need = [&](std::size_t n) {
    if (x.size() != n)
      throw std::invalid_argument("conformal factor '" + spec + "' expects " + std::to_string(n) + " argument(s)");
  };
  ConformalFactor f;
  f.label = spec;
  if (head == "const") {
    need(1);
    const double k = x[0];
    if (!(k > 0.0)) throw std::invalid_argument("constant conformal factor must be positive");
    f.lambda = [k](const Vec3&) { return k; };
  } else if (head == "affine") {
    need(4);
    f.lambda = [x](const Vec3& p) { return x[0] + x[1] * p[0] + x[2] * p[1] + x[3] * p[2]; };
  } else if (head == "trig") {
    need(6);
    f.lambda = [x](const Vec3& p) { return std::exp(x[0] + x[1] * std::sin(x[2] * p[0] + x[3] * p[1] + x[4] * p[2] + x[5])); };
  } else if (head == "random") {
    need(1);
    if (!(x[0] >= 0.0) || x[0] != std::floor(x[0])) throw std::invalid_argument("random factor seed must be a non-negative integer");
    return random_conformal_factor(static_cast<std::uint64_t>(x[0]));
  } else {
    throw std::invalid_argument("unknown conformal factor '" + spec + "' (const, affine, trig, random)");
  }
  return f;
}

ConformalPair conformal_check(const SurfaceCalculus& sc, const ConformalFactor& factor, double u, double v) {
  const ModelGeometry& M = sc.model();
  const LocalFrame lf = regular_local(sc, u, v);
  const auto& lam = factor.lambda;
  const double L = lam(lf.p);
  if (!(L > 0.0)) throw PreconditionError("conformal factor must be positive");

  auto mu = [&lam](const Vec3& q) { return 1.0 / lam(q); };
  const double e1L = directional(lam, lf.p, lf.e1);
  const double e2L = directional(lam, lf.p, lf.e2);

  // Second covariant derivatives of 1/lambda along e1, e2, using the extension
  // of each vector with constant coefficients in (X, Y).
  const double c1 = lf.c1, c2 = lf.c2;
  auto E = [&M, c1, c2](const Vec3& q) {
    const Frame f = M.frame(q);
    return Vec3(c1 * f.X + c2 * f.Y);
  };
  auto F = [&M, c1, c2](const Vec3& q) {
    const Frame f = M.frame(q);
    return Vec3(-c2 * f.X + c1 * f.Y);
  };
  const double EEmu = directional([&](const Vec3& q) { return directional(mu, q, E(q)); }, lf.p, lf.e1);
  const double FFmu = directional([&](const Vec3& q) { return directional(mu, q, F(q)); }, lf.p, lf.e2);
  const double e1mu = directional(mu, lf.p, lf.e1);
  const double e2mu = directional(mu, lf.p, lf.e2);
  const ConnectionForm w = M.omega(lf.p);
  const double w_e1 = c1 * w.onX + c2 * w.onY;
  const double w_e2 = -c2 * w.onX + c1 * w.onY;
  const double mu11 = EEmu - w_e1 * e2mu;
  const double mu22 = FFmu + w_e2 * e1mu;

  SurfaceField alpha_t = [&](double uu, double vv) {
    const LocalFrame q = sc.local(uu, vv);
    const double lq = lam(q.p);
    return q.alpha / lq + directional(lam, q.p, q.e1) / (lq * lq);
  };

  const double H = sc.H(u, v);
  const double ImA = M.torsion_A11(lf.p).imag();
  const double W = M.webster_W(lf.p);
  const double L2 = L * L, L4 = L2 * L2;

  ConformalPair out;
  out.H_cr = sc.e1_alpha(u, v) + 0.5 * lf.alpha * lf.alpha - ImA + 0.25 * W + H * H / 6.0;

  const double at = alpha_t(u, v);
  const double e1at = sc.e1(alpha_t, u, v) / L;
  const double Ht = H / L - 3.0 * e2L / L2;
  const double ImAt = ImA / L2 + 0.5 * (e2L * e2L / L4 - e1L * e1L / L4 + (mu22 - mu11) / L);
  const double Wt = 2.0 / L * (mu11 + mu22) - 4.0 * (e1L * e1L + e2L * e2L) / L4 + W / L2;
  out.H_cr_tilde = e1at + 0.5 * at * at - ImAt + 0.25 * Wt + Ht * Ht / 6.0;

  out.original = std::pow(std::abs(out.H_cr), 1.5) * lf.area2form;
  out.transformed = std::pow(std::abs(out.H_cr_tilde), 1.5) * L * L2 * lf.area2form;
  return out;
}

}  // namespace crsurf
