#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace crsurf;
using namespace crsurf::testing;

TEST_CASE("lemma registry") {
  const auto ids = lemma_ids();
  CHECK(ids.size() == 11);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).count("5.4") == 1);
  CHECK_THROWS_AS(verify_lemma("9.9"), std::invalid_argument);
}

TEST_CASE("lemma reports are deterministic and carry measured rows") {
  const LemmaReport a = verify_lemma("5.2"), b = verify_lemma("5.2");
  REQUIRE(a.measured.size() == b.measured.size());
  for (std::size_t i = 0; i < a.measured.size(); ++i) {
    CHECK(a.measured[i].name == b.measured[i].name);
    CHECK(a.measured[i].value == b.measured[i].value);
    CHECK(!a.measured[i].basis.empty());
  }
  CHECK(a.pass);
}

TEST_CASE("lemma protocols on their own grids") {
  for (const char* id : {"3.1", "3.4", "4.1", "5.1", "5.4", "6.1", "6.2"}) {
    CAPTURE(id);
    CHECK(verify_lemma(id).pass);
  }
  const LemmaReport r = verify_lemma("5.4");
  CHECK(r.measured.front().value == doctest::Approx(0.12701665).epsilon(1e-7));
  VerifyOptions coarse;
  coarse.grid = 16;
  coarse.sample_grid = 8;
  CHECK(verify_lemma("3.1", coarse).pass);
}

TEST_CASE("measured row checks") {
  CHECK(MeasuredRow{"x", 1.05, 1.0, 0.1, "b", Check::Near}.pass());
  CHECK_FALSE(MeasuredRow{"x", 1.2, 1.0, 0.1, "b", Check::Near}.pass());
  CHECK(MeasuredRow{"x", -5e-9, 0.0, 1e-8, "b", Check::Below}.pass());
  CHECK_FALSE(MeasuredRow{"x", std::nan(""), 0.0, 1e-8, "b", Check::Below}.pass());
  CHECK(MeasuredRow{"x", 0.5, 0.1, 0.0, "b", Check::Above}.pass());
}

TEST_CASE("sample nodes stay inside the rectangle") {
  const ParamDomain D{-1.0, 1.0, 0.0, 2.0, false, true};
  const auto nodes = sample_nodes(D, 7, 5);
  CHECK(nodes.size() == 35);
  for (const auto& [u, v] : nodes) {
    CHECK(u > -1.0 + 0.05 * 2 - 1e-12);
    CHECK(u < 1.0 - 0.05 * 2 + 1e-12);
    CHECK(v >= 0.0);
    CHECK(v < 2.0);
  }
}

TEST_CASE("Rossi E2 scan: sign pattern, symmetry and the Clifford zero") {
  const std::vector<double> cs = {0.05, 0.1, 0.9, 0.95};
  const RossiScan s = scan_rossi_E2(cs, 0.2);
  CHECK(s.hypothesis_holds);
  CHECK(s.rows[3].E2 > s.rows[2].E2);
  CHECK(s.rows[2].E2 > 0.0);
  CHECK(0.0 > s.rows[1].E2);
  CHECK(s.rows[1].E2 > s.rows[0].E2);

  const std::vector<double> lo = {0.3, 0.5}, hi = {std::sqrt(1 - 0.09), std::sqrt(0.75)};
  const RossiScan a = scan_rossi_E2(lo, 0.0), b = scan_rossi_E2(hi, 0.0);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(a.rows[i].E2 + b.rows[i].E2) < 1e-8);

  const std::vector<double> mid = {kClifford};
  for (double t : {-0.5, 0.0, 0.2, 0.5}) CHECK(std::abs(scan_rossi_E2(mid, t).rows[0].E2) < 1e-10);
  CHECK_FALSE(scan_rossi_E2(mid, 0.5).hypothesis_holds);
  CHECK_FALSE(scan_rossi_E2(mid, 0.5).warning.empty());
}

TEST_CASE("tail test needs strictly monotone divergent ends") {
  RossiScan s;
  for (int i = 0; i < 12; ++i) s.rows.push_back({0.05 + 0.08 * i, std::tan(-1.5 + 3.0 * i / 11), 0.0});
  CHECK(scan_tails_diverge(s, 5));
  std::swap(s.rows[1].E2, s.rows[2].E2);
  CHECK_FALSE(scan_tails_diverge(s, 5));
  CHECK_FALSE(scan_tails_diverge(s, 7));
}

TEST_CASE("ellipse torus zero-energy slice") {
  const EllipseRoot r = ellipse_hcr_root(2.0, 1.0);
  CHECK(r.hcr_at_0 == doctest::Approx(1.8125).epsilon(1e-8));
  CHECK(r.hcr_at_half_pi == doctest::Approx(-0.125).epsilon(1e-6));
  CHECK(std::abs(r.hcr_at_root) < 1e-8);
  CHECK(r.t0 > 0.0);
  CHECK(r.t0 < M_PI / 2);
  const auto curve = ellipse_curve(2.0, 1.0);
  CHECK(curve->arclength(r.t0) == doctest::Approx(r.s0).epsilon(1e-8));
  CHECK_THROWS_AS(ellipse_hcr_root(1.0, 1.0), PreconditionError);
}

TEST_CASE("positivity spot checks are labelled and honour their hypotheses") {
  const std::vector<double> cs = {0.3, 0.4, 0.5, 0.6, 0.7};
  const SpotCheck r = spot_check_no_zero_E1("rossi:0", cs);
  CHECK(r.label == "NON-PROOF numeric spot check");
  CHECK_FALSE(r.skipped);
  CHECK(r.min_E1 > 0.1);

  const std::vector<double> ss = {0.0, 1.0, 2.0};
  const SpotCheck c = spot_check_no_zero_E1("torus-circle:1", ss);
  REQUIRE(c.samples.size() == 3);
  for (const auto& [s, e] : c.samples) CHECK(e == doctest::Approx(c.samples.front().second).epsilon(1e-10));
  CHECK(c.min_E1 > 0.0);

  const SpotCheck skip = spot_check_no_zero_E1("rossi:0.2", cs);
  CHECK(skip.skipped);
  CHECK_FALSE(skip.warning.empty());
}
