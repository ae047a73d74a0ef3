#include "cpsys/form_json.hpp"

#include <json.hpp>

namespace cpsys {

std::string form_to_json(const GradedForm& f) {
  nlohmann::json j;
  j["dim"] = f.dim();
  j["terms"] = nlohmann::json::array();
  for (const auto& [idx, c] : f.terms())
    j["terms"].push_back({{"idx", idx}, {"re", c.real()}, {"im", c.imag()}});
  return j.dump(2);
}

GradedForm form_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GradedForm f(j.at("dim").get<int>());
  for (const auto& t : j.at("terms")) {
    IndexTuple idx = t.at("idx").get<IndexTuple>();
    f.add(idx, Complex(t.at("re").get<double>(), t.value("im", 0.0)));
  }
  return f;
}

}  // namespace cpsys
