#include "zygmund/json_io.hpp"

#include <stdexcept>

namespace zygmund {

nlohmann::json complex_to_json(complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number())
    return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a number or an [re, im] pair, got " + j.dump());
}

nlohmann::json series_to_json(const TruncatedSeries& s) {
  auto out = nlohmann::json::array();
  for (const auto& c : s.coeffs())
    out.push_back(complex_to_json(c));
  return out;
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("series must be a non-empty array of coefficients");
  std::vector<complex> c;
  c.reserve(j.size());
  for (const auto& x : j)
    c.push_back(complex_from_json(x));
  return TruncatedSeries(std::move(c));
}

} // namespace zygmund
