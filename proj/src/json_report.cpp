#include "srlab/json_report.hpp"

#include <cmath>

namespace srlab {

Json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error("expected a number in JSON report");
}

namespace {

Json encode_map(const std::map<std::string, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = encode_double(v);
  return out;
}

}  // namespace

Json to_json(const CheckReport& r) {
  Json j;
  j["schema"] = kJsonSchema;
  j["name"] = r.name;
  j["status"] = r.status();
  j["holds"] = r.holds;
  j["preconditions_met"] = r.preconditions_met;
  j["lhs"] = encode_double(r.lhs);
  j["rhs"] = encode_double(r.rhs);
  j["slack"] = encode_double(r.slack);
  j["details"] = encode_map(r.details);
  j["note"] = r.note;
  return j;
}

CheckReport check_report_from_json(const Json& j) {
  if (!j.contains("schema") || j.at("schema").get<int>() != kJsonSchema) {
    throw Error("unsupported CheckReport schema");
  }
  CheckReport r;
  r.name = j.at("name").get<std::string>();
  r.holds = j.at("holds").get<bool>();
  r.preconditions_met = j.at("preconditions_met").get<bool>();
  r.lhs = decode_double(j.at("lhs"));
  r.rhs = decode_double(j.at("rhs"));
  r.slack = decode_double(j.at("slack"));
  for (const auto& [k, v] : j.at("details").items()) r.details[k] = decode_double(v);
  r.note = j.value("note", std::string{});
  return r;
}

Json to_json(const FamilyInstance& f, const std::map<std::string, std::string>& files) {
  Json j;
  j["schema"] = kJsonSchema;
  j["family"] = f.name;
  j["params"] = encode_map(f.params);
  if (f.p) j["p"] = f.p->to_string();
  j["predicted"] = encode_map(f.predicted);
  j["computed"] = encode_map(f.computed);
  j["max_relative_error"] = encode_double(f.max_relative_error());
  Json th = Json::object();
  for (const auto& [k, v] : f.thresholds) th[k] = v;
  j["thresholds"] = th;
  j["threshold_met"] = f.threshold_met;
  j["violation"] = f.violation;
  Json mats = Json::object();
  for (const auto& [k, m] : f.matrices) {
    Json entry{{"rows", m.rows()}, {"cols", m.cols()}, {"field", to_string(m.field())}};
    if (const auto it = files.find(k); it != files.end()) entry["file"] = it->second;
    mats[k] = entry;
  }
  j["matrices"] = mats;
  if (!f.notes.empty()) j["notes"] = f.notes;
  return j;
}

Json to_json(const FuzzConfig& c) {
  Json j;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["dims_max"] = c.dims_max;
  Json d = Json::array();
  for (auto k : c.distributions) d.push_back(to_string(k));
  j["distributions"] = d;
  Json p = Json::array();
  for (const auto& e : c.p_grid) p.push_back(e.to_string());
  j["p_grid"] = p;
  j["checks"] = c.checks;
  // Parallelism is deliberately not echoed: the report does not depend on it.
  return j;
}

Json to_json(const RunReport& r, bool include_wall_time) {
  Json j;
  j["schema"] = kJsonSchema;
  j["config"] = to_json(r.config);
  Json checks = Json::object();
  std::uint64_t applicable = 0, passed = 0;
  for (const auto& [name, agg] : r.checks) {
    Json a;
    a["total_count"] = agg.total_count;
    a["applicable_count"] = agg.applicable_count;
    a["pass_count"] = agg.pass_count;
    a["min_slack"] = agg.has_min ? encode_double(agg.min_slack) : Json(nullptr);
    a["argmin_instance_seed"] = agg.has_min ? Json(agg.argmin_instance_seed) : Json(nullptr);
    checks[name] = a;
    applicable += agg.applicable_count;
    passed += agg.pass_count;
  }
  j["checks"] = checks;
  j["totals"] = {{"applicable_count", applicable},
                 {"pass_count", passed},
                 {"failure_count", r.failures.size()}};
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"trial_index", f.trial_index},
                        {"trial_seed", f.trial_seed},
                        {"report", to_json(f.report)}});
  }
  j["failures"] = failures;
  if (include_wall_time) j["wall_time"] = r.wall_time;
  return j;
}

Json to_json(const ConditionRow& row) {
  const CheckReport& r = row.report;
  Json j;
  j["epsilon"] = encode_double(row.epsilon);
  j["status"] = r.status();
  auto get = [&](const char* key) -> Json {
    const auto it = r.details.find(key);
    return it == r.details.end() ? Json(nullptr) : encode_double(it->second);
  };
  j["rank_E"] = get("rank_E");
  j["general_lower"] = get("general_lower");
  j["actual"] = get("actual");
  j["general_upper"] = get("general_upper");
  j["psd_lower"] = get("psd_lower");
  j["psd_upper"] = get("psd_upper");
  j["slack_lower"] = get("slack_general_lower");
  j["slack_upper"] = get("slack_general_upper");
  j["slack_psd_lower"] = get("slack_psd_lower");
  j["slack_psd_upper"] = get("slack_psd_upper");
  return j;
}

}  // namespace srlab
