#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapeval/metrics.hpp"
#include "mapeval/trajectory.hpp"

namespace mapeval {

inline constexpr std::string_view kOccupiedProportion = "occupied_proportion";
inline constexpr std::string_view kCornerCount = "corner_count";
inline constexpr std::string_view kEnclosedAreaCount = "enclosed_area_count";
inline constexpr std::string_view kRmse = "rmse";

/// One evaluated (or failed) run of an algorithm on a sequence.
struct RunRecord {
  std::string run_id;
  std::optional<MetricReport> metrics;
  /// Trajectory RMSE in meters; absent without ground truth.
  std::optional<double> rmse;
  /// Set when the run could not be evaluated; metrics are then absent.
  std::optional<std::string> error;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunInput {
  std::string algorithm;
  std::string sequence;
  RunRecord run;
};

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;

  friend bool operator==(const Stat&, const Stat&) = default;
};

struct SummaryEntry {
  std::string algorithm;
  std::string sequence;
  /// Sorted by run_id.
  std::vector<RunRecord> runs;
  /// Mean and sample stddev over the successfully evaluated runs, keyed by
  /// metric name. Empty when no run succeeded.
  std::map<std::string, Stat, std::less<>> metrics;
  /// Present when at least one run carries an RMSE value.
  std::optional<Stat> rmse;

  friend bool operator==(const SummaryEntry&, const SummaryEntry&) = default;
};

struct EvaluationSummary {
  /// Sorted by (algorithm, sequence).
  std::vector<SummaryEntry> entries;

  friend bool operator==(const EvaluationSummary&, const EvaluationSummary&) = default;
};

/// Groups runs by (algorithm, sequence) and aggregates each metric. The
/// result does not depend on the order of `runs`. Throws IntegrityError on a
/// repeated (algorithm, sequence, run_id) triple.
EvaluationSummary summarize(std::vector<RunInput> runs);

struct RankedAlgorithm {
  std::string algorithm;
  double mean = 0.0;
  /// 1-based competition rank; equal means share a rank.
  std::size_t rank = 0;

  friend bool operator==(const RankedAlgorithm&, const RankedAlgorithm&) = default;
};

/// Per-metric ordering of algorithms on one sequence; lower is better for
/// every metric. No cross-metric score is formed.
struct Ranking {
  std::string sequence;
  std::map<std::string, std::vector<RankedAlgorithm>, std::less<>> per_metric;
};

/// Throws LookupError if no entry has the given sequence.
Ranking rank(const EvaluationSummary& summary, std::string_view sequence);

enum class RenderFormat { Json, Csv, Html };

std::string render(const EvaluationSummary& summary, RenderFormat format);

/// Table cell text in the style of the published result tables, e.g.
/// "0.239 ± 0.011" (three decimals).
std::string format_mean_stddev(const Stat& stat);

/// Inverse of render(..., Json). Throws ParseError on malformed input.
EvaluationSummary parse_summary_json(std::string_view text);

/// JSON documents for single reports and parameter sets.
std::string metric_report_to_json(const MetricReport& report);
MetricReport metric_report_from_json(std::string_view text);
std::string params_to_json(const MetricParams& params);
/// Missing keys keep their defaults; unknown keys are rejected.
MetricParams params_from_json(std::string_view text, const MetricParams& defaults = {});

}  // namespace mapeval
