#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mapeval/grid.hpp"
#include "mapeval/metrics.hpp"
#include "mapeval/report.hpp"
#include "mapeval/trajectory.hpp"

namespace mapeval::cli {

/// `<root>/<algorithm>/<sequence>/<run_id>/`.
struct RunLocation {
  std::string algorithm;
  std::string sequence;
  std::string run_id;
  std::filesystem::path directory;
};

struct BatchLayout {
  std::vector<RunLocation> runs;
  /// Sequence name -> `<root>/ground_truth/<sequence>.txt`.
  std::map<std::string, std::filesystem::path> ground_truth;
  std::vector<std::string> warnings;
};

inline constexpr const char* kGroundTruthDir = "ground_truth";
inline constexpr const char* kMapFile = "map.pgm";
inline constexpr const char* kTrajectoryFile = "trajectory.txt";

/// Scans a batch tree. Runs are listed in lexicographic path order. Throws
/// mapeval::Error if `root` is not a directory.
BatchLayout discover_runs(const std::filesystem::path& root);

struct BatchOptions {
  MetricParams params;
  PgmConvention pgm;
  TrajectoryFormat format = TrajectoryFormat::Tum2D;
  double max_dt = 0.02;
  std::size_t jobs = 1;
};

/// Evaluates every run of `layout` with up to `options.jobs` worker threads.
/// The i-th result belongs to `layout.runs[i]`. A run that cannot be
/// evaluated carries an error message instead of throwing.
std::vector<RunInput> evaluate_runs(const BatchLayout& layout, const BatchOptions& options);

/// Number of runs in `summary` that carry an error.
std::size_t failed_runs(const EvaluationSummary& summary);

}  // namespace mapeval::cli
