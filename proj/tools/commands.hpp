#pragma once

#include "cli_config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace crsurf::cli {

// Bad input detected after parsing (model spec, lemma id, ...): exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfaceArgs {
  std::string model;
  std::string surface;
  double singular_eps = 1e-6;
  double fd_step = 2e-3;
};

struct ModelsArgs {
  std::string out;
};

struct EvaluateArgs {
  SurfaceArgs s;
  std::string functional = "E1";
  std::string grid = "64x64";
  std::string out;
};

struct ResidualArgs {
  SurfaceArgs s;
  std::string which = "E1";
  std::string form = "general";
  std::string grid = "16x16";
  double tol_hcr = 1e-8;
  double expect_below = 0;
  std::string out;
  std::string report;
};

struct VariationArgs {
  SurfaceArgs s;
  std::string functional = "E1";
  std::vector<double> bump{0.0, 0.0, 0.5};
  std::vector<double> fields{1.0, 0.0};
  double delta = 1e-3;
  std::string grid = "64x64";
  std::string out;
};

struct VerifyArgs {
  bool all = false;
  std::vector<std::string> lemmas;
  std::string grid;
  int sample_grid = 0;
  std::uint64_t seed = 20240611;
  std::string out;
};

struct ScanArgs {
  bool rossi_e2 = false;
  double t = 0.2;
  std::string c = "0.02:0.98:64";
  int grid = 16;
  int tail = 5;
  std::string out;
  std::string report;
};

struct ConformalArgs {
  SurfaceArgs s;
  std::vector<std::string> lambda;
  int random = 0;
  std::uint64_t seed = 20240611;
  std::string grid = "8x8";
  double tol = 1e-4;
  std::string out;
};

// Each returns the process exit code; `config` is the echoed option set.
int run_models(const ModelsArgs& a);
int run_evaluate(const EvaluateArgs& a, const nlohmann::json& config);
int run_residual(const ResidualArgs& a, const nlohmann::json& config);
int run_variation(const VariationArgs& a, const nlohmann::json& config);
int run_verify(const VerifyArgs& a, const nlohmann::json& config);
int run_scan(const ScanArgs& a, const nlohmann::json& config);
int run_conformal(const ConformalArgs& a, const nlohmann::json& config);

}  // namespace crsurf::cli
