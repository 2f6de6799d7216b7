#ifndef SRLAB_JSON_REPORT_HPP
#define SRLAB_JSON_REPORT_HPP

#include <map>
#include <string>

#include "json.hpp"
#include "srlab/condition.hpp"
#include "srlab/fuzz.hpp"
#include "srlab/gallery.hpp"
#include "srlab/theorems.hpp"

namespace srlab {

using Json = nlohmann::ordered_json;

// Version of every JSON document written by the tool.
inline constexpr int kJsonSchema = 1;

// Finite doubles become JSON numbers; inf/-inf/nan become the strings "inf",
// "-inf" and "nan" so they survive a round trip.
Json encode_double(double v);
double decode_double(const Json& j);

Json to_json(const CheckReport& r);
CheckReport check_report_from_json(const Json& j);

// `files` maps matrix names to the paths they were written to.
Json to_json(const FamilyInstance& f, const std::map<std::string, std::string>& files = {});

Json to_json(const FuzzConfig& c);
// `include_wall_time` = false drops the only non-deterministic field.
Json to_json(const RunReport& r, bool include_wall_time = true);

Json to_json(const ConditionRow& row);

}  // namespace srlab

#endif  // SRLAB_JSON_REPORT_HPP
