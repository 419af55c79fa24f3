#ifndef ZYGMUND_JSON_IO_HPP
#define ZYGMUND_JSON_IO_HPP

#include "zygmund/series.hpp"

#include <json.hpp>

namespace zygmund {

// Series travel as arrays of [re, im] pairs.  A bare number is accepted as a
// real coefficient on input.
nlohmann::json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(complex z);
complex complex_from_json(const nlohmann::json& j);

} // namespace zygmund

#endif
