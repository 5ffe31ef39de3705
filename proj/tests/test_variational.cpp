#include "support.hpp"

#include <boost/math/tools/roots.hpp>
#include <doctest.h>

using namespace crsurf;
using namespace crsurf::testing;

namespace {

std::vector<SurfaceCalculus> mixed_surfaces() {
  const ModelPtr db = make_disk_bundle();
  return {
      {db, plane_surface(1.0, 0.0, 0.5)},
      {db, cylinder_surface(0.45)},
      {db, graph_t2_surface(0.6)},
      {make_rossi_sphere(0.3), rossi_sigma_surface(0.45)},
      {make_rossi_sphere(-0.2), rossi_sigma_surface(0.6)},
      {make_torus(circle_curve(1.3)), torus_slice_surface(0.5, 2.6 * M_PI)},
  };
}

}  // namespace

TEST_CASE("h-symbols of order one are H and the H_cr summand") {
  for (const SurfaceCalculus& sc : mixed_surfaces()) {
    CAPTURE(sc.surface().label);
    for (const auto& [u, v] : sample_nodes(sc.surface().domain, 3, 3)) {
      const ELIntermediates h = el_intermediates(sc, u, v);
      const double a = sc.alpha(u, v);
      CHECK(h.h11 == doctest::Approx(sc.H(u, v)).epsilon(1e-12));
      CHECK(h.h10 == doctest::Approx(sc.e1_alpha(u, v) + 0.5 * a * a - sc.A11(u, v).imag() + 0.25 * sc.W(u, v))
                         .epsilon(1e-12));
      CHECK(h.H_cr == doctest::Approx(sc.H_cr(u, v)).epsilon(1e-12));
    }
  }
}

TEST_CASE("|H_cr| f from h-symbols equals the expanded expression") {
  for (const SurfaceCalculus& sc : mixed_surfaces()) {
    CAPTURE(sc.surface().label);
    for (const auto& [u, v] : sample_nodes(sc.surface().domain, 3, 3)) {
      const ELIntermediates h = el_intermediates(sc, u, v);
      CHECK(std::abs(std::abs(h.H_cr) * h.frak_f - hcr_frak_f_expanded(sc, u, v)) < 1e-8);
    }
  }
}

TEST_CASE("E1 residual vanishes on the critical examples") {
  const ModelPtr db = make_disk_bundle();
  const SurfaceCalculus plane(db, plane_surface(0.0, 1.0, 0.0));
  const SurfaceCalculus t2(db, graph_t2_surface(1.0));
  const SurfaceCalculus cl(make_rossi_sphere(0.3), rossi_sigma_surface(kClifford));
  for (const SurfaceCalculus* sc : {&plane, &t2, &cl}) {
    CAPTURE(sc->surface().label);
    for (const auto& [u, v] : sample_nodes(sc->surface().domain, 4, 4)) CHECK(std::abs(el1_general(*sc, u, v)) < 1e-5);
  }
  CHECK(cl.H_cr(1.0, 1.0) == doctest::Approx(-0.71978).epsilon(1e-5));
}

TEST_CASE("general and CYZ forms agree off criticality") {
  const SurfaceCalculus sc(make_disk_bundle(), plane_surface(1.0, 0.0, 0.5));
  for (const auto& [u, v] : sample_nodes(sc.surface().domain, 4, 4)) {
    const double g = el1_general(sc, u, v), c = el1_cyz(sc, u, v);
    CHECK(std::abs(g - c) < 1e-6);
    CHECK(std::abs(g) > 1e-3);
    CHECK(std::abs(el2_constant(sc, u, v) - el2_cyz(sc, u, v)) < 1e-10);
  }
}

TEST_CASE("CYZ forms refuse models with torsion") {
  const SurfaceCalculus rossi(make_rossi_sphere(0.3), rossi_sigma_surface(0.4));
  CHECK_THROWS_WITH_AS(el1_cyz(rossi, 1.0, 1.0), doctest::Contains("CYZ form inapplicable"), PreconditionError);
  const ModelPtr torus = make_torus(circle_curve(1.0));
  const SurfaceCalculus slice(torus, torus_slice_surface(0.3, 2 * M_PI));
  CHECK_THROWS_AS(el2_cyz(slice, 1.0, 1.0), PreconditionError);
  const auto e = ellipse_curve(2.0, 1.0);
  const SurfaceCalculus ell(make_torus(e), torus_slice_surface(0.3, e->period()));
  CHECK_THROWS_AS(el2_constant(ell, 1.0, 1.0), PreconditionError);
}

TEST_CASE("E1 residual is undefined where H_cr vanishes") {
  const SurfaceCalculus sc(make_disk_bundle(), plane_surface(0.0, 1.0, std::sqrt(3.0) / 2.0));
  CHECK_THROWS_AS(el1_general(sc, 0.1, 0.5), UndefinedResidualError);
  CHECK_THROWS_AS(el1_cyz(sc, 0.1, 0.5), UndefinedResidualError);
}

TEST_CASE("E2 residual closed forms") {
  const ModelPtr db = make_disk_bundle();
  for (double c : {0.0, 0.3, 0.6, std::sqrt(0.75)}) {
    const SurfaceCalculus sc(db, plane_surface(0.0, 1.0, c));
    CHECK(2.25 * el2_constant(sc, 0.1, 0.5) == doctest::Approx(std::pow(c * c - 0.75, 2) / 3).epsilon(1e-9));
  }
  for (double r : {0.5, 1.0, 2.0}) {
    const ModelPtr m = make_torus(circle_curve(r));
    const SurfaceCalculus sc(m, torus_slice_surface(0.1, 2 * M_PI * r));
    CHECK(2.25 * el2_constant(sc, 1.0, 2.0) == doctest::Approx(15.0 / (8 * r * r)).epsilon(1e-9));
  }
  // H = alpha = 0 on the Clifford torus leaves 3 (t^2 - 8t + 1) / (1 + t)^2.
  for (double t : {0.0, 0.3, -0.4, 0.6}) {
    const SurfaceCalculus sc(make_rossi_sphere(t), rossi_sigma_surface(kClifford));
    CHECK(2.25 * el2_constant(sc, 1.0, 2.0) ==
          doctest::Approx(3 * (t * t - 8 * t + 1) / ((1 + t) * (1 + t))).epsilon(1e-6));
  }
}

TEST_CASE("Clifford E2 residual changes sign once on (0, 1)") {
  auto E2 = [](double t) { return el2_constant(SurfaceCalculus(make_rossi_sphere(t), rossi_sigma_surface(kClifford)), 1.0, 2.0); };
  int changes = 0;
  double prev = E2(0.01);
  for (int k = 2; k <= 95; ++k) {
    const double cur = E2(0.01 * k);
    changes += (cur > 0) != (prev > 0) ? 1 : 0;
    prev = cur;
  }
  CHECK(changes == 1);
  const auto [lo, hi] = boost::math::tools::bisect(E2, 0.0, 0.5, [](double a, double b) { return b - a < 1e-13; });
  CHECK(std::abs(0.5 * (lo + hi) - kTStar) < 1e-8);
}

TEST_CASE("bump profile is compactly supported with sup-norm one") {
  const ParamDomain periodic{0, 2 * M_PI, 0, 2 * M_PI, true, true};
  const Bump b{0.1, 6.2, 0.5};
  CHECK(b(periodic, 0.1, 6.2) == doctest::Approx(1.0));
  CHECK(b(periodic, 0.1 + 2 * M_PI, 6.2 - 2 * M_PI) == doctest::Approx(1.0));
  CHECK(b(periodic, 0.1, 6.2 + 0.3) > 0.0);
  CHECK(b(periodic, 0.7, 6.2) == 0.0);
  CHECK(b(periodic, 3.0, 3.0) == 0.0);
}

TEST_CASE("first variation vanishes at E1 critical points and not at generic surfaces") {
  std::mt19937_64 rng(99);
  const SurfaceCalculus cl(make_rossi_sphere(0.3), rossi_sigma_surface(kClifford));
  const Deformation d = random_deformation(cl.surface().domain, rng);
  CHECK(std::abs(first_variation(cl, Functional::E1, d, 48, 48).value) < 1e-4);

  const SurfaceCalculus plane(make_disk_bundle(), plane_surface(1.0, 0.0, 0.5));
  Deformation dp;
  dp.bump = {0.0, 0.5, 0.3};
  dp.f_amp = 1.0;
  CHECK(std::abs(first_variation(plane, Functional::E1, dp, 48, 48).value) > 1e-3);

  Deformation bad = dp;
  bad.f_amp = bad.g_amp = 0.0;
  CHECK_THROWS_AS(first_variation(plane, Functional::E1, bad), std::invalid_argument);
}
