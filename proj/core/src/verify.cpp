#include "crsurf/verify.hpp"
#include "crsurf/numerics.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace crsurf {

bool MeasuredRow::pass() const {
  if (!std::isfinite(value)) return false;
  switch (check) {
    case Check::Near: return std::abs(value - expected) <= tolerance;
    case Check::Below: return value < tolerance;
    case Check::Above: return value > expected;
  }
  return false;
}

std::vector<std::pair<double, double>> sample_nodes(const ParamDomain& D, int n_u, int n_v, double inset) {
  auto axis = [inset](double a, double b, bool periodic, int n) {
    const double pad = periodic ? 0.0 : inset * (b - a);
    const double lo = a + pad, h = (b - a - 2 * pad) / n;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = lo + (i + 0.5) * h;
    return x;
  };
  const auto us = axis(D.u0, D.u1, D.periodic_u, n_u);
  const auto vs = axis(D.v0, D.v1, D.periodic_v, n_v);
  std::vector<std::pair<double, double>> out;
  out.reserve(us.size() * vs.size());
  for (double u : us)
    for (double v : vs) out.emplace_back(u, v);
  return out;
}

namespace {

constexpr double kClifford = 0.70710678118654752440;

std::string num_label(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double t_star() { return 4.0 - std::sqrt(15.0); }

// max |f| over the nodes, evaluated in parallel.
double max_abs(const std::vector<std::pair<double, double>>& nodes,
               const std::function<double(double, double)>& f) {
  std::vector<double> vals(nodes.size());
  num::parallel_for(nodes.size(), [&](std::size_t k) { vals[k] = std::abs(f(nodes[k].first, nodes[k].second)); });
  double m = 0.0;
  for (double v : vals) m = std::max(m, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
  return m;
}

class Protocol {
 public:
  Protocol(std::string id, std::string title, const VerifyOptions& o) : opts_(o) {
    report_.lemma_id = std::move(id);
    report_.title = std::move(title);
  }

  int grid(int dflt) const { return opts_.grid > 0 ? opts_.grid : dflt; }
  int samples(int dflt) const { return opts_.sample_grid > 0 ? opts_.sample_grid : dflt; }
  std::uint64_t seed() const { return opts_.seed; }

  void near(std::string name, double value, double expected, double tol, std::string basis) {
    report_.measured.push_back({std::move(name), value, expected, tol, std::move(basis), Check::Near});
  }
  void below(std::string name, double value, double tol, std::string basis = "measured") {
    report_.measured.push_back({std::move(name), value, 0.0, tol, std::move(basis), Check::Below});
  }
  void above(std::string name, double value, double threshold, std::string basis = "measured") {
    report_.measured.push_back({std::move(name), value, threshold, 0.0, std::move(basis), Check::Above});
  }
  void note(std::string s) { report_.notes.push_back(std::move(s)); }

  LemmaReport finish(std::chrono::steady_clock::time_point start) {
    report_.pass = !report_.measured.empty() &&
                   std::all_of(report_.measured.begin(), report_.measured.end(), [](const auto& r) { return r.pass(); });
    report_.runtime_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return report_;
  }

 private:
  VerifyOptions opts_;
  LemmaReport report_;
};

double E1_of(const SurfaceCalculus& sc, int n) { return integrate(sc, Functional::E1, n, n).value; }

void lemma_3_1(Protocol& P) {
  const ModelPtr db = make_disk_bundle();
  const SurfaceCalculus sc(db, plane_surface(0.0, 1.0, std::sqrt(3.0) / 2.0));
  const int n = P.samples(128);
  P.below("max |H_cr|, plane (0, 1, sqrt(3)/2)",
          max_abs(sample_nodes(sc.surface().domain, n, n, 0.0), [&](double u, double v) { return sc.H_cr(u, v); }),
          1e-8);
  P.below("E1, plane (0, 1, sqrt(3)/2)", E1_of(sc, P.grid(128)), 1e-9);

  std::mt19937_64 rng(P.seed());
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    double a = U(rng), b = U(rng);
    if (std::hypot(a, b) < 0.1) a += 0.5;
    const double c = std::sqrt(3.0 * (a * a + b * b)) / 2.0;
    const SurfaceCalculus s(db, plane_surface(a, b, c));
    worst = std::max(worst, max_abs(sample_nodes(s.surface().domain, 32, 32, 0.0),
                                    [&](double u, double v) { return s.H_cr(u, v); }));
  }
  P.below("max |H_cr| over 10 random planes with c^2 = 3(a^2+b^2)/4", worst, 1e-8);
}

void lemma_3_2(Protocol& P) {
  const ModelPtr db = make_disk_bundle();
  const int n = P.samples(8);
  for (const auto& [label, c] : {std::pair{"c = 0", 0.0}, std::pair{"c^2/(a^2+b^2) = 3/8", std::sqrt(3.0 / 8.0)}}) {
    const SurfaceCalculus sc(db, plane_surface(0.0, 1.0, c));
    const auto nodes = sample_nodes(sc.surface().domain, n, n);
    P.below(std::string("max |E1 residual|, plane ") + label,
            max_abs(nodes, [&](double u, double v) { return el1_general(sc, u, v); }), 1e-6);
    P.below(std::string("max |general - CYZ|, plane ") + label,
            max_abs(nodes, [&](double u, double v) { return el1_general(sc, u, v) - el1_cyz(sc, u, v); }), 1e-6,
            "oracle");
    P.above(std::string("E1, plane ") + label, E1_of(sc, P.grid(64)), 1e-3);
  }
}

const double kCylinderRadius = 1.0 - std::sqrt(2.0 - std::sqrt(3.0));

void lemma_3_3(Protocol& P) {
  const SurfaceCalculus sc(make_disk_bundle(), cylinder_surface(kCylinderRadius));
  const int n = P.samples(32);
  P.below("max |H_cr|, cylinder r = 1 - sqrt(2 - sqrt(3))",
          max_abs(sample_nodes(sc.surface().domain, n, n, 0.0), [&](double u, double v) { return sc.H_cr(u, v); }),
          1e-7);
  P.below("E1, cylinder", E1_of(sc, P.grid(64)), 1e-9);
}

void lemma_3_4(Protocol& P) {
  const SurfaceCalculus sc(make_disk_bundle(), graph_t2_surface(1.0));
  const int n = P.samples(8);
  const auto nodes = sample_nodes(sc.surface().domain, n, n);
  P.below("max |E1 residual|, t^2 = 1", max_abs(nodes, [&](double u, double v) { return el1_general(sc, u, v); }),
          1e-5);
  const auto dense = sample_nodes(sc.surface().domain, 32, 32, 0.0);
  P.below("max |alpha - 1/(2r)|",
          max_abs(dense, [&](double u, double v) { return sc.alpha(u, v) - 1.0 / (2.0 * v); }), 1e-8, "closed form");
  P.below("max |H|", max_abs(dense, [&](double u, double v) { return sc.H(u, v); }), 1e-8, "closed form");
  P.above("E1, t^2 = 1", E1_of(sc, P.grid(64)), 1e-3);
}

void lemma_4_1(Protocol& P) {
  const ModelPtr db = make_disk_bundle();
  const int n = P.samples(8);
  {
    const SurfaceCalculus sc(db, plane_surface(0.0, 1.0, std::sqrt(3.0) / 2.0));
    P.below("max |E2 residual|, plane c^2/(a^2+b^2) = 3/4",
            max_abs(sample_nodes(sc.surface().domain, n, n), [&](double u, double v) { return el2_cyz(sc, u, v); }),
            1e-6);
  }
  {
    const SurfaceCalculus sc(db, plane_surface(0.0, 1.0, 0.0));
    P.below("max |E2 residual - 1/12|, plane c = 0",
            max_abs(sample_nodes(sc.surface().domain, n, n),
                    [&](double u, double v) { return el2_cyz(sc, u, v) - 1.0 / 12.0; }),
            1e-6, "derived");
  }
}

void lemma_4_2(Protocol& P) {
  const SurfaceCalculus sc(make_disk_bundle(), cylinder_surface(kCylinderRadius));
  const int n = P.samples(8);
  P.below("max |E2 residual|, cylinder r = 1 - sqrt(2 - sqrt(3))",
          max_abs(sample_nodes(sc.surface().domain, n, n), [&](double u, double v) { return el2_cyz(sc, u, v); }),
          1e-6);
}

void lemma_5_1(Protocol& P) {
  const ModelPtr m = make_rossi_sphere(t_star());
  const SurfaceCalculus sc(m, rossi_sigma_surface(kClifford));
  const int n = P.samples(32);
  const auto nodes = sample_nodes(sc.surface().domain, n, n);
  // alpha = H = 0 on the Clifford torus, so H_cr reduces to W/4 - Im A_11.
  P.below("max |H_cr|, closed-form path", max_abs(nodes, [&](double u, double v) {
            const Vec3 p = sc.surface().F(u, v);
            return m->webster_W(p) / 4.0 - m->torsion_A11(p).imag();
          }),
          1e-10, "closed form");
  P.below("max |H_cr|, numeric frame", max_abs(nodes, [&](double u, double v) { return sc.H_cr(u, v); }), 1e-6);
  P.below("E1, Clifford torus at t = 4 - sqrt(15)", E1_of(sc, P.grid(64)), 1e-8);
}

void lemma_5_2(Protocol& P) {
  const int n = P.samples(6);
  for (double t : {0.0, 0.3, -0.4}) {
    const SurfaceCalculus sc(make_rossi_sphere(t), rossi_sigma_surface(kClifford));
    const std::string tag = "t = " + num_label(t);
    P.below("max |E1 residual|, Clifford torus " + tag,
            max_abs(sample_nodes(sc.surface().domain, n, n), [&](double u, double v) { return el1_general(sc, u, v); }),
            1e-5);
    const double e1 = E1_of(sc, P.grid(32));
    P.above("E1, Clifford torus " + tag, e1, 0.1);
    if (t == 0.0) P.near("E1 value, Clifford torus t = 0", e1, std::pow(0.5, 1.5) * 0.5 * 4 * M_PI * M_PI, 1e-3, "derived");
  }
}

double clifford_E2(double t) {
  const SurfaceCalculus sc(make_rossi_sphere(t), rossi_sigma_surface(kClifford));
  return el2_constant(sc, 1.0, 1.0);
}

void lemma_5_4(Protocol& P) {
  auto done = [](double lo, double hi) { return hi - lo < 1e-12; };
  const auto [lo, hi] = boost::math::tools::bisect(clifford_E2, 0.0, 0.5, done);
  P.near("root of t -> E2 residual on the Clifford torus", 0.5 * (lo + hi), t_star(), 1e-8, "closed form");
  for (double t : {0.0, 0.3, -0.3}) P.above("|E2 residual| at t = " + num_label(t), std::abs(clifford_E2(t)), 0.01);
}

void lemma_6_1(Protocol& P) {
  const double r = 1.0;
  const ModelPtr m = make_torus(circle_curve(r));
  const SurfaceCalculus sc(m, torus_slice_surface(0.3, torus_curve(*m)->period()));
  const int n = P.samples(6);
  const auto nodes = sample_nodes(sc.surface().domain, n, n);
  P.below("max |E1 residual|, circle torus r = 1",
          max_abs(nodes, [&](double u, double v) { return el1_general(sc, u, v); }), 1e-6);
  P.below("max |H|", max_abs(nodes, [&](double u, double v) { return sc.H(u, v); }), 1e-10, "closed form");
  P.below("max |H_cr - 5/(8r)|", max_abs(nodes, [&](double u, double v) { return sc.H_cr(u, v) - 5.0 / (8.0 * r); }),
          1e-8, "closed form");
  P.above("E1, circle torus slice", E1_of(sc, P.grid(32)), 0.0);
}

void lemma_6_2(Protocol& P) {
  const EllipseRoot root = ellipse_hcr_root(2.0, 1.0);
  P.near("H_cr at the vertex t = 0", root.hcr_at_0, 29.0 / 16.0, 1e-6, "closed form");
  P.near("H_cr at the vertex t = pi/2", root.hcr_at_half_pi, -0.125, 1e-6, "closed form");
  P.below("|H_cr| at the bisection root", std::abs(root.hcr_at_root), 1e-8);
  const auto curve = ellipse_curve(2.0, 1.0);
  const SurfaceCalculus sc(make_torus(curve), torus_slice_surface(root.s0, curve->period()));
  P.below("E1 of the slice s = s0", E1_of(sc, P.grid(32)), 1e-6);
  P.note("t0 = " + num_label(root.t0) + ", s0 = " + num_label(root.s0));
}

struct Entry {
  const char* title;
  void (*run)(Protocol&);
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"3.1", {"plane c^2 = 3(a^2+b^2)/4 in the disk bundle: zero-energy E1 minimizer", lemma_3_1}},
      {"3.2", {"planes c = 0 and c^2 = 3(a^2+b^2)/8: E1 critical with positive energy", lemma_3_2}},
      {"3.3", {"cylinder r = 1 - sqrt(2 - sqrt(3)): zero-energy E1 minimizer", lemma_3_3}},
      {"3.4", {"surface t^2 = 1: E1 critical with positive energy", lemma_3_4}},
      {"4.1", {"plane c^2 = 3(a^2+b^2)/4: E2 critical; plane c = 0 is not", lemma_4_1}},
      {"4.2", {"cylinder r = 1 - sqrt(2 - sqrt(3)): E2 critical", lemma_4_2}},
      {"5.1", {"Rossi Clifford torus at t = 4 - sqrt(15): zero-energy E1 minimizer", lemma_5_1}},
      {"5.2", {"Rossi Clifford tori: E1 critical with positive energy", lemma_5_2}},
      {"5.4", {"Rossi Clifford torus is E2 critical iff t = 4 - sqrt(15)", lemma_5_4}},
      {"6.1", {"circle torus slices: E1 critical with positive energy", lemma_6_1}},
      {"6.2", {"ellipse torus a = 2, b = 1: a zero-energy E1 slice exists", lemma_6_2}},
  };
  return r;
}

}  // namespace

std::vector<std::string> lemma_ids() {
  std::vector<std::string> ids;
  for (const auto& [k, _] : registry()) ids.push_back(k);
  return ids;
}

LemmaReport verify_lemma(const std::string& id, const VerifyOptions& options) {
  const auto& r = registry();
  const auto it = r.find(id);
  if (it == r.end()) throw std::invalid_argument("unknown lemma id '" + id + "'");
  const auto start = std::chrono::steady_clock::now();
  Protocol P(id, it->second.title, options);
  it->second.run(P);
  return P.finish(start);
}

}  // namespace crsurf
