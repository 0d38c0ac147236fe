#include <algorithm>

#include <json.hpp>

#include "json_io.hpp"
#include "mapeval/report.hpp"

namespace mapeval {

using nlohmann::json;

namespace {

const char* tie_rule_name(TieRule rule) {
  return rule == TieRule::TiesFree ? "ties_free" : "ties_occupied";
}

TieRule tie_rule_from(const std::string& name) {
  if (name == "ties_free") return TieRule::TiesFree;
  if (name == "ties_occupied") return TieRule::TiesOccupied;
  throw ParameterError("unknown proportion tie rule '" + name + "'");
}

json params_json(const MetricParams& p) {
  return {
      {"corner",
       {{"log_sigma", p.corner.log_sigma},
        {"min_blob_size", p.corner.min_blob_size},
        {"harris_k", p.corner.harris_k},
        {"harris_window_sigma", p.corner.harris_window_sigma},
        {"rel_threshold", p.corner.rel_threshold},
        {"nms_radius", p.corner.nms_radius},
        {"structure_threshold", p.corner.structure_threshold}}},
      {"enclosed", {{"u_steps", p.enclosed.u_steps}, {"min_hole_area", p.enclosed.min_hole_area}}},
      {"proportion", {{"tie_rule", tie_rule_name(p.proportion.tie_rule)}}},
  };
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!object.is_object()) throw ParameterError(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ParameterError("unknown parameter '" + where + "." + key + "'");
    }
  }
}

template <typename T>
void read_if_present(const json& object, const char* key, T& out) {
  if (auto it = object.find(key); it != object.end()) out = it->get<T>();
}

MetricParams params_from(const json& doc, MetricParams p) {
  reject_unknown_keys(doc, {"corner", "enclosed", "proportion"}, "params");
  if (auto it = doc.find("corner"); it != doc.end()) {
    reject_unknown_keys(*it,
                        {"log_sigma", "min_blob_size", "harris_k", "harris_window_sigma",
                         "rel_threshold", "nms_radius", "structure_threshold"},
                        "corner");
    read_if_present(*it, "log_sigma", p.corner.log_sigma);
    read_if_present(*it, "min_blob_size", p.corner.min_blob_size);
    read_if_present(*it, "harris_k", p.corner.harris_k);
    read_if_present(*it, "harris_window_sigma", p.corner.harris_window_sigma);
    read_if_present(*it, "rel_threshold", p.corner.rel_threshold);
    read_if_present(*it, "nms_radius", p.corner.nms_radius);
    read_if_present(*it, "structure_threshold", p.corner.structure_threshold);
  }
  if (auto it = doc.find("enclosed"); it != doc.end()) {
    reject_unknown_keys(*it, {"u_steps", "min_hole_area"}, "enclosed");
    read_if_present(*it, "u_steps", p.enclosed.u_steps);
    read_if_present(*it, "min_hole_area", p.enclosed.min_hole_area);
  }
  if (auto it = doc.find("proportion"); it != doc.end()) {
    reject_unknown_keys(*it, {"tie_rule"}, "proportion");
    if (auto rule = it->find("tie_rule"); rule != it->end()) {
      p.proportion.tie_rule = tie_rule_from(rule->get<std::string>());
    }
  }
  return p;
}

json report_json(const MetricReport& r) {
  json per_u = json::array();
  for (const auto& e : r.enclosed_per_u) {
    per_u.push_back({{"u", e.u},
                     {"threshold", e.threshold},
                     {"degenerate", e.degenerate},
                     {"holes", e.holes},
                     {"count", e.count}});
  }
  return {
      {"occupied_proportion", r.occupied_proportion},
      {"proportion_threshold", r.proportion_threshold},
      {"occupied_cells", r.occupied_cells},
      {"free_cells", r.free_cells},
      {"unknown_cells", r.unknown_cells},
      {"corner_count", r.corner_count},
      {"enclosed_area_count", r.enclosed_area_count},
      {"enclosed_best_u", r.enclosed_best_u},
      {"enclosed_per_u", std::move(per_u)},
      {"params_used", params_json(r.params_used)},
      {"diagnostics", r.diagnostics},
  };
}

MetricReport report_from(const json& j) {
  MetricReport r;
  r.occupied_proportion = j.at("occupied_proportion").get<double>();
  r.proportion_threshold = j.at("proportion_threshold").get<double>();
  r.occupied_cells = j.at("occupied_cells").get<std::size_t>();
  r.free_cells = j.at("free_cells").get<std::size_t>();
  r.unknown_cells = j.at("unknown_cells").get<std::size_t>();
  r.corner_count = j.at("corner_count").get<std::size_t>();
  r.enclosed_area_count = j.at("enclosed_area_count").get<std::size_t>();
  r.enclosed_best_u = j.at("enclosed_best_u").get<double>();
  for (const auto& e : j.at("enclosed_per_u")) {
    r.enclosed_per_u.push_back({e.at("u").get<double>(), e.at("threshold").get<double>(),
                                e.at("degenerate").get<bool>(), e.at("holes").get<std::size_t>(),
                                e.at("count").get<std::size_t>()});
  }
  r.params_used = params_from(j.at("params_used"), MetricParams{});
  r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return r;
}

json stat_json(const Stat& s) { return {{"mean", s.mean}, {"stddev", s.stddev}}; }

Stat stat_from(const json& j) { return {j.at("mean").get<double>(), j.at("stddev").get<double>()}; }

json summary_json(const EvaluationSummary& summary) {
  json entries = json::array();
  for (const auto& e : summary.entries) {
    json runs = json::array();
    for (const auto& run : e.runs) {
      json jr = {{"run_id", run.run_id}};
      if (run.metrics) jr["metrics"] = report_json(*run.metrics);
      if (run.rmse) jr["rmse"] = *run.rmse;
      if (run.error) jr["error"] = *run.error;
      runs.push_back(std::move(jr));
    }
    json metrics = json::object();
    for (const auto& [name, stat] : e.metrics) metrics[name] = stat_json(stat);
    json je = {{"algorithm", e.algorithm},
               {"sequence", e.sequence},
               {"runs", std::move(runs)},
               {"metrics", std::move(metrics)}};
    if (e.rmse) je["rmse"] = stat_json(*e.rmse);
    entries.push_back(std::move(je));
  }
  return {{"entries", std::move(entries)}};
}

EvaluationSummary summary_from(const json& j) {
  EvaluationSummary summary;
  for (const auto& je : j.at("entries")) {
    SummaryEntry e;
    e.algorithm = je.at("algorithm").get<std::string>();
    e.sequence = je.at("sequence").get<std::string>();
    for (const auto& jr : je.at("runs")) {
      RunRecord run;
      run.run_id = jr.at("run_id").get<std::string>();
      if (auto it = jr.find("metrics"); it != jr.end()) run.metrics = report_from(*it);
      if (auto it = jr.find("rmse"); it != jr.end()) run.rmse = it->get<double>();
      if (auto it = jr.find("error"); it != jr.end()) run.error = it->get<std::string>();
      e.runs.push_back(std::move(run));
    }
    for (const auto& [name, stat] : je.at("metrics").items()) e.metrics.emplace(name, stat_from(stat));
    if (auto it = je.find("rmse"); it != je.end()) e.rmse = stat_from(*it);
    summary.entries.push_back(std::move(e));
  }
  return summary;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

/// Parses `text` and converts it with `convert`, mapping library exceptions
/// onto ParseError.
template <typename F>
auto parse_document(std::string_view text, const char* what, F convert) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + what + ": " + e.what(),
                     line_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  try {
    return convert(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what(), 1);
  }
}

}  // namespace

namespace detail {

std::string summary_to_json(const EvaluationSummary& summary) {
  return summary_json(summary).dump(2) + "\n";
}

}  // namespace detail

EvaluationSummary parse_summary_json(std::string_view text) {
  return parse_document(text, "evaluation summary", [](const json& j) { return summary_from(j); });
}

std::string metric_report_to_json(const MetricReport& report) {
  return report_json(report).dump(2) + "\n";
}

MetricReport metric_report_from_json(std::string_view text) {
  return parse_document(text, "metric report", [](const json& j) { return report_from(j); });
}

std::string params_to_json(const MetricParams& params) { return params_json(params).dump(2) + "\n"; }

MetricParams params_from_json(std::string_view text, const MetricParams& defaults) {
  MetricParams p =
      parse_document(text, "parameter file", [&](const json& j) { return params_from(j, defaults); });
  p.validate();
  return p;
}

}  // namespace mapeval
