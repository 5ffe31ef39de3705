#include "commands.hpp"

#include <crsurf/geometry.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

using namespace crsurf::cli;

namespace {

void surface_options(Echo& echo, CLI::App* sub, SurfaceArgs& s) {
  echo.add(sub, "model", s.model, "model spec, see `crsurf models`")->required();
  echo.add(sub, "surface", s.surface, "plane:a,b,c | cylinder:rho | graph-t2:c | rossi-sigma:c | torus-slice:c")
      ->required();
  echo.add(sub, "singular-eps", s.singular_eps, "tilt below which a point counts as singular")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  echo.add(sub, "fd-step", s.fd_step, "parameter step of the tangential stencils")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::vector<std::string> option_names(const CLI::App* app) {
  std::vector<std::string> out;
  for (const CLI::Option* o : app->get_options())
    for (const auto& n : o->get_lnames()) out.push_back("--" + n);
  for (const CLI::App* s : app->get_subcommands({})) out.push_back(s->get_name());
  return out;
}

// The first token naming a subcommand, so flat config keys can be routed to it.
std::string active_subcommand(int argc, char** argv, const CLI::App& app) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config") {
      ++i;
      continue;
    }
    for (const CLI::App* s : app.get_subcommands({}))
      if (s->get_name() == a) return a;
  }
  return {};
}

int report_extras(const CLI::ExtrasError& e, const CLI::App& app, const std::string& active) {
  std::cerr << e.what() << '\n';
  const CLI::App* scope = active.empty() ? &app : app.get_subcommand(active);
  const std::string msg = e.what();
  const auto colon = msg.find(": ");
  if (colon != std::string::npos) {
    std::istringstream words(msg.substr(colon + 2));
    std::string w;
    while (words >> w) {
      const std::string key = w.substr(0, w.find('='));
      const std::string near = suggest(key, option_names(scope));
      if (!near.empty()) std::cerr << "did you mean '" << near << "' instead of '" << key << "'?\n";
    }
  }
  std::cerr << "run with --help for usage\n";
  return 2;
}

// Long flags on the command line that the active scope does not define.
std::vector<std::string> unknown_flags(int argc, char** argv, const CLI::App& app, const std::string& active) {
  const CLI::App* scope = active.empty() ? &app : app.get_subcommand(active);
  std::vector<std::string> known = option_names(scope), out;
  for (const auto& n : option_names(&app)) known.push_back(n);
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--", 0) != 0 || a == "--") continue;
    const std::string key = a.substr(0, a.find('='));
    if (std::find(known.begin(), known.end(), key) == known.end()) out.push_back(key);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudohermitian surface energies, Euler-Lagrange residuals and lemma checks.", "crsurf"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string active;
  app.config_formatter(std::make_shared<FlatConfig>(&active));
  app.set_config("--config", "", "flat `key = value` file (keys are long flag names) or a JSON report to replay;"
                                 " command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer("Worker threads: CRSURF_WORKERS (default: OpenMP default).\n"
             "Exit codes: 0 success, 1 check failure or runtime error, 2 usage error.");

  ModelsArgs models;
  auto* m = app.add_subcommand("models", "list the model specs");
  m->add_option("--out", models.out, "JSON output path");

  Echo e_eval;
  EvaluateArgs eval;
  auto* ev = app.add_subcommand("evaluate", "integrate E1 or E2 over a surface");
  surface_options(e_eval, ev, eval.s);
  e_eval.add(ev, "functional", eval.functional, "E1 | E2")->capture_default_str();
  e_eval.add(ev, "grid", eval.grid, "quadrature grid NxM (>= 8 per axis)")->check(grid_validator())->capture_default_str();
  e_eval.add(ev, "out", eval.out, "JSON report path");

  Echo e_res;
  ResidualArgs res;
  auto* rs = app.add_subcommand("residual", "Euler-Lagrange residual at grid nodes");
  surface_options(e_res, rs, res.s);
  e_res.add(rs, "which", res.which, "E1 | E2")->capture_default_str();
  e_res.add(rs, "form", res.form, "general | cyz (vanishing torsion, constant W)")->capture_default_str();
  e_res.add(rs, "grid", res.grid, "sample grid NxM (>= 8 per axis)")->check(grid_validator())->capture_default_str();
  e_res.add(rs, "tol-hcr", res.tol_hcr, "E1 residual is undefined where |H_cr| <= tol")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  e_res.add(rs, "expect-below", res.expect_below, "exit 1 unless every residual is defined and below this");
  e_res.add(rs, "out", res.out, "CSV output path");
  e_res.add(rs, "report", res.report, "JSON summary path");
  rs->footer("CSV columns: u,v,H,alpha,H_cr,residual (17 significant digits; nan where undefined or singular)");

  Echo e_var;
  VariationArgs var;
  auto* vr = app.add_subcommand("variation", "first variation along a bump deformation F + t b (f e2 + g T)");
  surface_options(e_var, vr, var.s);
  e_var.add(vr, "functional", var.functional, "E1 | E2")->capture_default_str();
  e_var.add(vr, "bump", var.bump, "bump centre and width u0,v0,width")->delimiter(',')->expected(3)->required();
  e_var.add(vr, "fields", var.fields, "amplitudes f,g of the e2 and T components")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  e_var.add(vr, "delta", var.delta, "difference step")->check(CLI::PositiveNumber)->capture_default_str();
  e_var.add(vr, "grid", var.grid, "support grid NxM (>= 8 per axis)")->check(grid_validator())->capture_default_str();
  e_var.add(vr, "out", var.out, "JSON report path");

  Echo e_ver;
  VerifyArgs ver;
  auto* vf = app.add_subcommand("verify", "run lemma protocols");
  auto* all = e_ver.flag(vf, "all", ver.all, "run every lemma");
  e_ver.add(vf, "lemma", ver.lemmas, "lemma id (repeatable)")->excludes(all);
  e_ver.add(vf, "grid", ver.grid, "quadrature grid N or NxN, overriding protocol defaults")->check(grid_validator());
  e_ver.add(vf, "sample-grid", ver.sample_grid, "residual sample grid per axis")->check(CLI::Range(8, 4096));
  e_ver.add(vf, "seed", ver.seed, "seed for random members")->capture_default_str();
  e_ver.add(vf, "out", ver.out, "JSON report path");
  vf->footer("Lemma ids: 3.1 3.2 3.3 3.4 4.1 4.2 5.1 5.2 5.4 6.1 6.2. Exit 0 iff every selected lemma passes.");

  Echo e_scan;
  ScanArgs scan;
  auto* sc = app.add_subcommand("scan", "parameter scans");
  e_scan.flag(sc, "rossi-e2", scan.rossi_e2, "E2 of the tori rho_1 = c in the Rossi sphere");
  e_scan.add(sc, "t", scan.t, "Rossi parameter")->capture_default_str();
  e_scan.add(sc, "c", scan.c, "start:stop:count, inclusive")->capture_default_str();
  e_scan.add(sc, "grid", scan.grid, "quadrature grid per axis")->check(CLI::Range(8, 4096))->capture_default_str();
  e_scan.add(sc, "tail", scan.tail, "samples per tail for the divergence test")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  e_scan.add(sc, "out", scan.out, "CSV output path");
  e_scan.add(sc, "report", scan.report, "JSON summary path");
  sc->footer("CSV columns: c,E2,error_estimate (17 significant digits)");

  Echo e_conf;
  ConformalArgs conf;
  auto* cf = app.add_subcommand("conformal-check", "compare the dA1 2-form before and after theta -> lambda theta");
  surface_options(e_conf, cf, conf.s);
  e_conf.add(cf, "lambda", conf.lambda, "const:k | affine:a0,ax,ay,at | trig:c0,a,kx,ky,kt,phase | random:seed");
  e_conf.add(cf, "random", conf.random, "number of random factors (20 when no --lambda is given)")
      ->check(CLI::NonNegativeNumber);
  e_conf.add(cf, "seed", conf.seed, "seed of the first random factor")->capture_default_str();
  e_conf.add(cf, "grid", conf.grid, "sample grid NxM")->capture_default_str();
  e_conf.add(cf, "tol", conf.tol, "relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  e_conf.add(cf, "out", conf.out, "JSON report path");

  active = active_subcommand(argc, argv, app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ExtrasError& e) {
    return report_extras(e, app, active);
  } catch (const CLI::ParseError& e) {
    if (active.empty() && argc > 1 && argv[1][0] != '-') {
      std::vector<std::string> names;
      for (const CLI::App* s : app.get_subcommands({})) names.push_back(s->get_name());
      const std::string near = suggest(argv[1], names);
      std::cerr << "unknown subcommand '" << argv[1] << "'";
      if (!near.empty()) std::cerr << "; did you mean '" << near << "'?";
      std::cerr << "\nrun with --help for usage\n";
      return 2;
    }
    if (const auto bad = unknown_flags(argc, argv, app, active); !bad.empty()) {
      const CLI::App* scope = active.empty() ? &app : app.get_subcommand(active);
      for (const auto& key : bad) {
        std::cerr << "unknown option '" << key << "'";
        const std::string near = suggest(key, option_names(scope));
        if (!near.empty()) std::cerr << "; did you mean '" << near << "'?";
        std::cerr << '\n';
      }
      std::cerr << "run with --help for usage\n";
      return 2;
    }
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (m->parsed()) return run_models(models);
    if (ev->parsed()) return run_evaluate(eval, e_eval.json("evaluate"));
    if (rs->parsed()) return run_residual(res, e_res.json("residual"));
    if (vr->parsed()) return run_variation(var, e_var.json("variation"));
    if (vf->parsed()) return run_verify(ver, e_ver.json("verify"));
    if (sc->parsed()) return run_scan(scan, e_scan.json("scan"));
    if (cf->parsed()) return run_conformal(conf, e_conf.json("conformal-check"));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const crsurf::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
