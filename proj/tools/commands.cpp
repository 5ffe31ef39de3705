#include "commands.hpp"

#include <crsurf/numerics.hpp>
#include <crsurf/verify.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

namespace crsurf::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv(double x) { return num(x, 17); }

void print_pairs(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) std::cout << k << std::string(w - k.size() + 2, ' ') << v << '\n';
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

// Spec errors surface as usage errors.
SurfaceCalculus build(const SurfaceArgs& a) {
  try {
    ModelPtr m = parse_model(a.model);
    auto patch = std::make_shared<SurfacePatch>(*parse_surface(a.surface, *m));
    patch->singular_eps = a.singular_eps;
    return SurfaceCalculus(m, patch, SurfaceOptions{a.fd_step});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Functional functional_arg(const std::string& s) {
  try {
    return parse_functional(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

const char* check_name(Check c) {
  switch (c) {
    case Check::Near: return "near";
    case Check::Below: return "below";
    case Check::Above: return "above";
  }
  return "?";
}

json report_json(const LemmaReport& r) {
  json rows = json::array();
  for (const auto& m : r.measured)
    rows.push_back({{"name", m.name},
                    {"value", m.value},
                    {"expected", m.expected},
                    {"tolerance", m.tolerance},
                    {"basis", m.basis},
                    {"check", check_name(m.check)},
                    {"pass", m.pass()}});
  return {{"lemma_id", r.lemma_id}, {"title", r.title},         {"pass", r.pass},
          {"runtime_ms", r.runtime_ms}, {"measured", rows}, {"notes", r.notes}};
}

std::vector<double> parse_range(const std::string& spec) {
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || !(ss >> std::ws).eof())
    throw UsageError("range '" + spec + "' must be start:stop:count");
  if (n < 2 || !(a < b)) throw UsageError("range '" + spec + "' needs start < stop and count >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

}  // namespace

int run_models(const ModelsArgs& a) {
  const std::vector<std::pair<std::string, std::string>> about = {
      {"disk-bundle", "unit disk bundle, W = -1/2, vanishing torsion"},
      {"rossi:<t>", "Rossi sphere, |t| < 1"},
      {"torus-circle:<r>", "circle-generated torus"},
      {"torus-ellipse:<a>,<b>", "ellipse-generated torus"},
      {"heisenberg", "Heisenberg group, flat"},
  };
  json j = json::array();
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& spec : model_catalog()) {
    const auto it = std::find_if(about.begin(), about.end(), [&](const auto& p) { return p.first == spec; });
    const std::string text = it == about.end() ? "" : it->second;
    rows.emplace_back(spec, text);
    j.push_back({{"spec", spec}, {"description", text}});
  }
  print_pairs(rows);
  write_json(a.out, {{"models", j}});
  return 0;
}

int run_evaluate(const EvaluateArgs& a, const json& config) {
  const SurfaceCalculus sc = build(a.s);
  const Functional which = functional_arg(a.functional);
  const Grid g = parse_grid(a.grid);
  const QuadratureResult q = integrate(sc, which, g.n_u, g.n_v);
  print_pairs({{"model", a.s.model},
               {"surface", a.s.surface},
               {"functional", functional_name(which)},
               {"grid", std::to_string(q.n_u) + "x" + std::to_string(q.n_v)},
               {"value", num(q.value, 12)},
               {"error_estimate", num(q.error_estimate, 3)},
               {"excluded_fraction", num(q.excluded_fraction, 3)}});
  write_json(a.out, {{"config", config},
                     {"model", a.s.model},
                     {"surface", a.s.surface},
                     {"functional", functional_name(which)},
                     {"grid", {q.n_u, q.n_v}},
                     {"nodes", q.nodes},
                     {"value", q.value},
                     {"error_estimate", q.error_estimate},
                     {"excluded_fraction", q.excluded_fraction}});
  return 0;
}

int run_residual(const ResidualArgs& a, const json& config) {
  const SurfaceCalculus sc = build(a.s);
  const Functional which = functional_arg(a.which);
  if (a.form != "general" && a.form != "cyz") throw UsageError("--form must be general or cyz");
  const bool cyz = a.form == "cyz";
  const Grid g = parse_grid(a.grid);
  const auto nodes = sample_nodes(sc.surface().domain, g.n_u, g.n_v);

  struct Row {
    double u, v, H = kNaN, alpha = kNaN, H_cr = kNaN, residual = kNaN;
  };
  std::vector<Row> rows(nodes.size());
  std::atomic<bool> inapplicable{false};
  std::string why;
  num::parallel_for(nodes.size(), [&](std::size_t i) {
    const auto [u, v] = nodes[i];
    Row& r = rows[i];
    r.u = u;
    r.v = v;
    if (sc.local(u, v).singular) return;
    const FramePointData d = sc.point(u, v);
    r.H = d.H;
    r.alpha = d.alpha;
    r.H_cr = d.H_cr;
    try {
      if (which == Functional::E1)
        r.residual = cyz ? el1_cyz(sc, u, v, a.tol_hcr) : el1_general(sc, u, v, a.tol_hcr);
      else
        r.residual = cyz ? el2_cyz(sc, u, v) : el2_constant(sc, u, v);
    } catch (const UndefinedResidualError&) {
    } catch (const PreconditionError& e) {
      if (!inapplicable.exchange(true)) why = e.what();
    }
  });
  if (inapplicable) throw UsageError(why);

  long undefined = 0;
  double worst = 0;
  for (const Row& r : rows) {
    if (std::isnan(r.residual))
      ++undefined;
    else
      worst = std::max(worst, std::abs(r.residual));
  }

  if (!a.out.empty()) {
    auto f = open_csv(a.out);
    f << "u,v,H,alpha,H_cr,residual\n";
    for (const Row& r : rows)
      f << csv(r.u) << ',' << csv(r.v) << ',' << csv(r.H) << ',' << csv(r.alpha) << ',' << csv(r.H_cr) << ','
        << csv(r.residual) << '\n';
  }
  const bool checked = a.expect_below > 0;
  const bool ok = !checked || (undefined == 0 && worst < a.expect_below);
  std::vector<std::pair<std::string, std::string>> text = {
      {"model", a.s.model},
      {"surface", a.s.surface},
      {"residual", std::string(functional_name(which)) + " (" + a.form + ")"},
      {"nodes", std::to_string(rows.size())},
      {"undefined", std::to_string(undefined)},
      {"max_abs_residual", num(worst, 6)}};
  if (checked) text.emplace_back("check", std::string(ok ? "PASS" : "FAIL") + " (< " + num(a.expect_below, 3) + ")");
  print_pairs(text);
  write_json(a.report, {{"config", config},
                        {"nodes", rows.size()},
                        {"undefined", undefined},
                        {"max_abs_residual", worst},
                        {"pass", ok}});
  return ok ? 0 : 1;
}

int run_variation(const VariationArgs& a, const json& config) {
  const SurfaceCalculus sc = build(a.s);
  const Functional which = functional_arg(a.functional);
  const Grid g = parse_grid(a.grid);
  Deformation d;
  d.bump = Bump{a.bump[0], a.bump[1], a.bump[2]};
  d.f_amp = a.fields[0];
  d.g_amp = a.fields[1];
  d.delta = a.delta;
  VariationResult r;
  try {
    r = first_variation(sc, which, d, g.n_u, g.n_v);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  print_pairs({{"model", a.s.model},
               {"surface", a.s.surface},
               {"functional", functional_name(which)},
               {"derivative", num(r.value, 10)},
               {"at_delta", num(r.coarse, 10)},
               {"at_half_delta", num(r.fine, 10)}});
  write_json(a.out, {{"config", config}, {"value", r.value}, {"coarse", r.coarse}, {"fine", r.fine}});
  return 0;
}

int run_verify(const VerifyArgs& a, const json& config) {
  const auto known = lemma_ids();
  std::vector<std::string> ids = a.all ? known : a.lemmas;
  if (ids.empty()) throw UsageError("verify needs --all or --lemma <id>");
  for (const auto& id : ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      const std::string near = suggest(id, known);
      throw UsageError("unknown lemma id '" + id + "'" + (near.empty() ? "" : "; did you mean '" + near + "'?"));
    }
  }
  VerifyOptions opt;
  if (!a.grid.empty()) {
    const Grid g = parse_grid(a.grid);
    if (g.n_u != g.n_v) throw UsageError("verify grids are square");
    opt.grid = g.n_u;
  }
  opt.sample_grid = a.sample_grid;
  opt.seed = a.seed;

  // Lemma jobs run side by side; each one is parallel over its own grid nodes.
  std::vector<LemmaReport> reports(ids.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned jobs = std::clamp<unsigned>(hw / std::max(1, num::worker_count()), 1u, static_cast<unsigned>(ids.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < ids.size();) {
      try {
        reports[i] = verify_lemma(ids[i], opt);
      } catch (const std::exception& e) {
        reports[i].lemma_id = ids[i];
        reports[i].pass = false;
        reports[i].notes.push_back(std::string("error: ") + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool all_pass = true;
  json lemmas = json::array();
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    lemmas.push_back(report_json(r));
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.lemma_id << "  " << r.title << "  (" << r.runtime_ms << " ms)\n";
    std::size_t w = 0;
    for (const auto& m : r.measured) w = std::max(w, m.name.size());
    for (const auto& m : r.measured) {
      std::cout << "    " << (m.pass() ? "ok   " : "FAIL ") << m.name << std::string(w - m.name.size() + 2, ' ')
                << num(m.value, 10);
      if (m.check == Check::Near)
        std::cout << "  expected " << num(m.expected, 10) << " +- " << num(m.tolerance, 2);
      else if (m.check == Check::Below)
        std::cout << "  < " << num(m.tolerance, 2);
      else
        std::cout << "  > " << num(m.expected, 3);
      std::cout << "  [" << m.basis << "]\n";
    }
    for (const auto& n : r.notes) std::cout << "    note: " << n << '\n';
  }
  std::cout << (all_pass ? "all lemmas pass" : "some lemmas fail") << '\n';
  write_json(a.out, {{"config", config}, {"pass", all_pass}, {"lemmas", lemmas}});
  return all_pass ? 0 : 1;
}

int run_scan(const ScanArgs& a, const json& config) {
  if (!a.rossi_e2) throw UsageError("scan needs --rossi-e2");
  if (!(std::abs(a.t) < 1.0)) throw UsageError("Rossi parameter needs |t| < 1");
  const auto cs = parse_range(a.c);
  if (!(cs.front() > 0.0 && cs.back() < 1.0)) throw UsageError("c range must lie inside (0, 1)");
  const RossiScan scan = scan_rossi_E2(cs, a.t, a.grid);
  const bool tails = static_cast<int>(scan.rows.size()) >= 2 * a.tail && scan_tails_diverge(scan, a.tail);

  if (!a.out.empty()) {
    auto f = open_csv(a.out);
    f << "c,E2,error_estimate\n";
    for (const auto& r : scan.rows) f << csv(r.c) << ',' << csv(r.E2) << ',' << csv(r.error_estimate) << '\n';
  }
  std::cout << "c               E2                error_estimate\n";
  for (const auto& r : scan.rows) {
    std::string c = num(r.c, 8), e = num(r.E2, 12);
    std::cout << c << std::string(c.size() < 16 ? 16 - c.size() : 1, ' ') << e
              << std::string(e.size() < 18 ? 18 - e.size() : 1, ' ') << num(r.error_estimate, 3) << '\n';
  }
  if (!scan.hypothesis_holds) std::cerr << "warning: " << scan.warning << '\n';
  std::cout << "divergent tails (last " << a.tail << "): " << (tails ? "yes" : "no") << '\n';
  json rows = json::array();
  for (const auto& r : scan.rows) rows.push_back({{"c", r.c}, {"E2", r.E2}, {"error_estimate", r.error_estimate}});
  write_json(a.report, {{"config", config},
                        {"t", scan.t},
                        {"hypothesis_holds", scan.hypothesis_holds},
                        {"warning", scan.warning},
                        {"tails_diverge", tails},
                        {"rows", rows}});
  return 0;
}

int run_conformal(const ConformalArgs& a, const json& config) {
  const SurfaceCalculus sc = build(a.s);
  std::vector<ConformalFactor> factors;
  try {
    for (const auto& spec : a.lambda) factors.push_back(parse_conformal_factor(spec));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const int n_random = a.lambda.empty() && a.random == 0 ? 20 : a.random;
  for (int k = 0; k < n_random; ++k) factors.push_back(random_conformal_factor(a.seed + k));
  const Grid g = parse_grid(a.grid, 1);
  const auto nodes = sample_nodes(sc.surface().domain, g.n_u, g.n_v);

  json results = json::array();
  double worst = 0;
  std::cout << "lambda                          max_rel_diff    min|H_cr|\n";
  for (const auto& fac : factors) {
    std::vector<double> rel(nodes.size(), 0.0), hcr(nodes.size(), kNaN);
    num::parallel_for(nodes.size(), [&](std::size_t i) {
      const auto [u, v] = nodes[i];
      if (sc.local(u, v).singular) return;
      const ConformalPair p = conformal_check(sc, fac, u, v);
      const double scale = std::max(std::abs(p.original), std::abs(p.transformed));
      rel[i] = scale < 1e-12 ? 0.0 : std::abs(p.original - p.transformed) / scale;
      hcr[i] = std::abs(p.H_cr);
    });
    const double m = *std::max_element(rel.begin(), rel.end());
    double hmin = std::numeric_limits<double>::infinity();
    for (double h : hcr)
      if (!std::isnan(h)) hmin = std::min(hmin, h);
    worst = std::max(worst, m);
    results.push_back({{"lambda", fac.label}, {"max_rel_diff", m}, {"min_abs_H_cr", hmin}});
    std::string lab = fac.label;
    std::cout << lab << std::string(lab.size() < 32 ? 32 - lab.size() : 1, ' ') << num(m, 3)
              << std::string(16 - std::min<std::size_t>(15, num(m, 3).size()), ' ') << num(hmin, 4) << '\n';
  }
  const bool ok = worst <= a.tol;
  std::cout << (ok ? "PASS" : "FAIL") << " max relative difference " << num(worst, 3) << " (tolerance " << num(a.tol, 3)
            << ")\n";
  write_json(a.out, {{"config", config}, {"pass", ok}, {"max_rel_diff", worst}, {"factors", results}});
  return ok ? 0 : 1;
}

}  // namespace crsurf::cli
