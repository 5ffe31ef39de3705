#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace crsurf::cli {

// Config files: flat `key = value` lines named after the long flags, INI
// sections per subcommand, or a JSON report whose "config" object is replayed.
// Flat keys are routed to the subcommand named on the command line.
class FlatConfig : public CLI::ConfigBase {
 public:
  explicit FlatConfig(const std::string* active) : active_(active) {}
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const std::string* active_;
};

// Records the typed value of every option so reports can echo it.
class Echo {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    fields_.emplace_back(name, [&target] { return nlohmann::json(target); });
    return app->add_option("--" + name, target, help);
  }
  CLI::Option* flag(CLI::App* app, const std::string& name, bool& target, const std::string& help) {
    fields_.emplace_back(name, [&target] { return nlohmann::json(target); });
    return app->add_flag("--" + name, target, help);
  }
  nlohmann::json json(const std::string& subcommand) const;

 private:
  std::vector<std::pair<std::string, std::function<nlohmann::json()>>> fields_;
};

struct Grid {
  int n_u = 0, n_v = 0;
};

// "N" or "NxM", each at least `min_per_axis`.
Grid parse_grid(const std::string& text, int min_per_axis = 8);
CLI::Validator grid_validator(int min_per_axis = 8);

// Closest candidate by edit distance, or "" when nothing is close.
std::string suggest(const std::string& word, const std::vector<std::string>& candidates);

}  // namespace crsurf::cli
