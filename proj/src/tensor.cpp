#include "chaoskit/tensor.hpp"

#include <json.hpp>

namespace chaoskit {

double max_abs_diff(const Kernel& a, const Kernel& b) {
  a.require_shape(b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::string kernel_to_json(const Kernel& f) {
  nlohmann::ordered_json j;
  j["d"] = f.d();
  j["m"] = f.m();
  j["n"] = f.n();
  auto entries = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == Complex(0.0, 0.0)) continue;
    entries.push_back({f.unflat(k), f[k].real(), f[k].imag()});
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

Kernel kernel_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Kernel raw(j.at("d").get<int>(), j.at("m").get<int>(), j.at("n").get<int>());
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("kernel entry must be [[indices], re, im]");
    raw.at(e[0].get<std::vector<int>>()) += Complex(e[1].get<double>(), e[2].get<double>());
  }
  return symmetrize(raw);
}

}  // namespace chaoskit
