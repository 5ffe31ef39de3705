#include "cli_config.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <sstream>

namespace crsurf::cli {

namespace {

std::vector<std::string> json_inputs(const nlohmann::json& v) {
  std::vector<std::string> out;
  auto one = [](const nlohmann::json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(one(x));
  } else {
    out.push_back(one(v));
  }
  return out;
}

}  // namespace

std::vector<CLI::ConfigItem> FlatConfig::from_config(std::istream& input) const {
  const std::string text(std::istreambuf_iterator<char>(input), {});
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<CLI::ConfigItem> items;

  if (first != std::string::npos && text[first] == '{') {
    const auto doc = nlohmann::json::parse(text);
    const nlohmann::json& cfg = doc.contains("config") ? doc.at("config") : doc;
    if (!cfg.is_object()) throw CLI::ConversionError("config", "JSON config must be an object");
    std::string sub = active_ ? *active_ : "";
    if (cfg.contains("subcommand")) {
      const auto named = cfg.at("subcommand").get<std::string>();
      if (!sub.empty() && named != sub)
        throw CLI::ConversionError("config", "JSON config was written by '" + named + "', not '" + sub + "'");
      sub = named;
    }
    for (const auto& [key, value] : cfg.items()) {
      if (key == "subcommand" || key == "config") continue;
      CLI::ConfigItem it;
      if (!sub.empty()) it.parents = {sub};
      it.name = key;
      it.inputs = json_inputs(value);
      items.push_back(std::move(it));
    }
    return items;
  }

  std::istringstream again(text);
  items = CLI::ConfigBase::from_config(again);
  if (active_ && !active_->empty()) {
    for (auto& it : items)
      if (it.parents.empty() && it.name != "++" && it.name != "--") it.parents = {*active_};
  }
  return items;
}

nlohmann::json Echo::json(const std::string& subcommand) const {
  nlohmann::json j = nlohmann::json::object();
  j["subcommand"] = subcommand;
  for (const auto& [name, get] : fields_) j[name] = get();
  return j;
}

Grid parse_grid(const std::string& text, int min_per_axis) {
  auto number = [&](std::string_view s) {
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw std::invalid_argument("bad grid '" + text + "'");
    return v;
  };
  const auto x = text.find('x');
  Grid g;
  if (x == std::string::npos) {
    g.n_u = g.n_v = number(text);
  } else {
    g.n_u = number(std::string_view(text).substr(0, x));
    g.n_v = number(std::string_view(text).substr(x + 1));
  }
  if (g.n_u < min_per_axis || g.n_v < min_per_axis)
    throw std::invalid_argument("grid '" + text + "' needs at least " + std::to_string(min_per_axis) + " nodes per axis");
  return g;
}

CLI::Validator grid_validator(int min_per_axis) {
  return CLI::Validator(
      [min_per_axis](std::string& s) -> std::string {
        try {
          parse_grid(s, min_per_axis);
        } catch (const std::exception& e) {
          return e.what();
        }
        return {};
      },
      "NxM", "GRID");
}

std::string suggest(const std::string& word, const std::vector<std::string>& candidates) {
  auto distance = [](const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      std::size_t diag = row[0];
      row[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        const std::size_t up = row[j];
        row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
        diag = up;
      }
    }
    return row[b.size()];
  };
  std::string best;
  std::size_t best_d = std::max<std::size_t>(2, word.size() / 3) + 1;
  for (const auto& c : candidates) {
    const std::size_t d = distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace crsurf::cli
