#include "mapeval/report.hpp"

#include "json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>
#include <tuple>

namespace mapeval {
namespace {

Stat to_stat(const std::vector<double>& values) {
  const RunStatistics s = aggregate_runs(values);
  return {s.mean, s.stddev};
}

std::string shortest(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? end : buf);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Metric rows in a fixed order, followed by RMSE when present.
std::vector<std::pair<std::string, Stat>> entry_rows(const SummaryEntry& e) {
  std::vector<std::pair<std::string, Stat>> rows;
  for (std::string_view name : {kOccupiedProportion, kCornerCount, kEnclosedAreaCount}) {
    if (auto it = e.metrics.find(name); it != e.metrics.end()) rows.emplace_back(name, it->second);
  }
  if (e.rmse) rows.emplace_back(kRmse, *e.rmse);
  return rows;
}

std::string render_csv(const EvaluationSummary& summary) {
  std::string out = "algorithm,sequence,metric,mean,stddev\n";
  for (const auto& e : summary.entries) {
    for (const auto& [name, stat] : entry_rows(e)) {
      out += csv_field(e.algorithm) + "," + csv_field(e.sequence) + "," + name + "," +
             shortest(stat.mean) + "," + shortest(stat.stddev) + "\n";
    }
  }
  return out;
}

std::string render_html(const EvaluationSummary& summary) {
  std::set<std::string> algorithms;
  std::set<std::string> sequences;
  for (const auto& e : summary.entries) {
    algorithms.insert(e.algorithm);
    sequences.insert(e.sequence);
  }
  auto find_entry = [&](const std::string& alg, const std::string& seq) -> const SummaryEntry* {
    for (const auto& e : summary.entries)
      if (e.algorithm == alg && e.sequence == seq) return &e;
    return nullptr;
  };

  std::string out =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>Map quality evaluation</title>\n"
      "<style>table{border-collapse:collapse;margin-bottom:1.5em}"
      "td,th{border:1px solid #888;padding:2px 8px;text-align:center}</style>\n"
      "</head>\n<body>\n<h1>Map quality evaluation</h1>\n";

  struct Section {
    std::string_view key;
    std::string_view title;
  };
  const Section sections[] = {
      {kRmse, "Trajectory RMSE (m)"},
      {kOccupiedProportion, "Proportion of occupied cells"},
      {kCornerCount, "Corner count"},
      {kEnclosedAreaCount, "Enclosed area count"},
  };
  for (const auto& section : sections) {
    bool any = false;
    for (const auto& e : summary.entries) {
      any = any || (section.key == kRmse ? e.rmse.has_value() : e.metrics.count(section.key) > 0);
    }
    // The RMSE table only appears for sequences with ground truth.
    if (!any) continue;

    out += "<h2>" + std::string(section.title) + "</h2>\n<table class=\"" +
           std::string(section.key) + "\">\n<tr><th>Sequence</th>";
    for (const auto& alg : algorithms) out += "<th>" + html_escape(alg) + "</th>";
    out += "</tr>\n";
    for (const auto& seq : sequences) {
      out += "<tr><td>" + html_escape(seq) + "</td>";
      for (const auto& alg : algorithms) {
        std::optional<Stat> stat;
        if (const SummaryEntry* e = find_entry(alg, seq)) {
          if (section.key == kRmse) {
            stat = e->rmse;
          } else if (auto it = e->metrics.find(section.key); it != e->metrics.end()) {
            stat = it->second;
          }
        }
        out += "<td>" + (stat ? format_mean_stddev(*stat) : std::string("&ndash;")) + "</td>";
      }
      out += "</tr>\n";
    }
    out += "</table>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace

EvaluationSummary summarize(std::vector<RunInput> runs) {
  std::sort(runs.begin(), runs.end(), [](const RunInput& a, const RunInput& b) {
    return std::tie(a.algorithm, a.sequence, a.run.run_id) <
           std::tie(b.algorithm, b.sequence, b.run.run_id);
  });

  const auto duplicate = std::adjacent_find(runs.begin(), runs.end(), [](const RunInput& a, const RunInput& b) {
    return std::tie(a.algorithm, a.sequence, a.run.run_id) == std::tie(b.algorithm, b.sequence, b.run.run_id);
  });
  if (duplicate != runs.end()) {
    throw IntegrityError("duplicate run '" + duplicate->run.run_id + "' for algorithm '" + duplicate->algorithm +
                         "' on sequence '" + duplicate->sequence + "'");
  }

  EvaluationSummary summary;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunInput& r = runs[i];
    if (summary.entries.empty() || summary.entries.back().algorithm != r.algorithm ||
        summary.entries.back().sequence != r.sequence) {
      summary.entries.push_back({r.algorithm, r.sequence, {}, {}, std::nullopt});
    }
    summary.entries.back().runs.push_back(std::move(runs[i].run));
  }

  for (auto& entry : summary.entries) {
    std::vector<double> proportion;
    std::vector<double> corners;
    std::vector<double> enclosed;
    std::vector<double> rmse_values;
    for (const auto& run : entry.runs) {
      if (run.metrics) {
        proportion.push_back(run.metrics->occupied_proportion);
        corners.push_back(static_cast<double>(run.metrics->corner_count));
        enclosed.push_back(static_cast<double>(run.metrics->enclosed_area_count));
      }
      if (run.rmse) rmse_values.push_back(*run.rmse);
    }
    if (!proportion.empty()) {
      entry.metrics.emplace(kOccupiedProportion, to_stat(proportion));
      entry.metrics.emplace(kCornerCount, to_stat(corners));
      entry.metrics.emplace(kEnclosedAreaCount, to_stat(enclosed));
    }
    if (!rmse_values.empty()) entry.rmse = to_stat(rmse_values);
  }
  return summary;
}

Ranking rank(const EvaluationSummary& summary, std::string_view sequence) {
  Ranking ranking;
  ranking.sequence = std::string(sequence);

  std::map<std::string, std::vector<RankedAlgorithm>, std::less<>> columns;
  bool found = false;
  for (const auto& e : summary.entries) {
    if (e.sequence != sequence) continue;
    found = true;
    for (const auto& [name, stat] : entry_rows(e)) {
      columns[name].push_back({e.algorithm, stat.mean, 0});
    }
  }
  if (!found) throw LookupError("no evaluated algorithm on sequence '" + std::string(sequence) + "'");

  for (auto& [name, column] : columns) {
    std::sort(column.begin(), column.end(), [](const RankedAlgorithm& a, const RankedAlgorithm& b) {
      return std::tie(a.mean, a.algorithm) < std::tie(b.mean, b.algorithm);
    });
    for (std::size_t i = 0; i < column.size(); ++i) {
      column[i].rank = i > 0 && column[i].mean == column[i - 1].mean ? column[i - 1].rank : i + 1;
    }
    ranking.per_metric.emplace(name, std::move(column));
  }
  return ranking;
}

std::string format_mean_stddev(const Stat& stat) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3f \xC2\xB1 %.3f", stat.mean, stat.stddev);
  return buf;
}

std::string render(const EvaluationSummary& summary, RenderFormat format) {
  switch (format) {
    case RenderFormat::Csv: return render_csv(summary);
    case RenderFormat::Html: return render_html(summary);
    case RenderFormat::Json: break;
  }
  return detail::summary_to_json(summary);
}

}  // namespace mapeval
