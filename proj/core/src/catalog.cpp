#include "crsurf/model.hpp"

#include <sstream>

namespace crsurf {
namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad number '" + item + "' in spec '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> args_of(const std::string& spec, const std::string& head, std::size_t count) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("spec '" + spec + "' needs arguments after ':'");
  auto v = parse_numbers(spec.substr(colon + 1), spec);
  if (v.size() != count)
    throw std::invalid_argument(head + " expects " + std::to_string(count) + " argument(s): '" + spec + "'");
  return v;
}

}  // namespace

ModelPtr parse_model(const std::string& spec) {
  const std::string head = spec.substr(0, spec.find(':'));
  if (head == "disk-bundle" && spec == head) return make_disk_bundle();
  if (head == "heisenberg" && spec == head) return make_heisenberg();
  if (head == "rossi") return make_rossi_sphere(args_of(spec, head, 1)[0]);
  if (head == "torus-circle") return make_torus(circle_curve(args_of(spec, head, 1)[0]));
  if (head == "torus-ellipse") {
    const auto v = args_of(spec, head, 2);
    return make_torus(ellipse_curve(v[0], v[1]));
  }
  throw std::invalid_argument("unknown model spec '" + spec + "'");
}

std::vector<std::string> model_catalog() {
  return {"disk-bundle", "rossi:<t>", "torus-circle:<r>", "torus-ellipse:<a>,<b>", "heisenberg"};
}

}  // namespace crsurf
