#include "batch.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

#include "mapeval/error.hpp"

namespace mapeval::cli {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> sorted_subdirectories(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GroundTruth {
  std::optional<Trajectory> trajectory;
  std::string error;
};

RunRecord evaluate_one(const RunLocation& run, const GroundTruth* truth,
                       const BatchOptions& options) {
  RunRecord record;
  record.run_id = run.run_id;
  const fs::path map_path = run.directory / kMapFile;
  try {
    if (!fs::exists(map_path)) throw Error("missing " + map_path.string());
    record.metrics = evaluate_map(load_pgm(map_path, options.pgm), options.params);
  } catch (const std::exception& e) {
    record.error = std::string("map: ") + e.what();
    return record;
  }
  if (truth == nullptr) return record;

  try {
    if (!truth->trajectory) throw Error("ground truth unusable: " + truth->error);
    const fs::path trajectory_path = run.directory / kTrajectoryFile;
    if (!fs::exists(trajectory_path)) throw Error("missing " + trajectory_path.string());
    const Trajectory estimated = load_trajectory(trajectory_path, options.format);
    record.rmse = rmse(associate(estimated, *truth->trajectory, options.max_dt));
  } catch (const std::exception& e) {
    record.error = std::string("trajectory: ") + e.what();
  }
  return record;
}

}  // namespace

BatchLayout discover_runs(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error("batch root is not a directory: " + root.string());
  BatchLayout layout;

  const fs::path truth_dir = root / kGroundTruthDir;
  if (fs::is_directory(truth_dir)) {
    for (const auto& entry : fs::directory_iterator(truth_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        layout.ground_truth.emplace(entry.path().stem().string(), entry.path());
      }
    }
  }

  for (const auto& algorithm : sorted_subdirectories(root)) {
    if (algorithm.filename() == kGroundTruthDir) continue;
    for (const auto& sequence : sorted_subdirectories(algorithm)) {
      for (const auto& run : sorted_subdirectories(sequence)) {
        if (fs::is_empty(run)) {
          layout.warnings.push_back("skipping empty run directory " + run.string());
          continue;
        }
        layout.runs.push_back({algorithm.filename().string(), sequence.filename().string(),
                               run.filename().string(), run});
      }
    }
  }
  if (layout.runs.empty()) layout.warnings.push_back("no runs found under " + root.string());
  return layout;
}

std::vector<RunInput> evaluate_runs(const BatchLayout& layout, const BatchOptions& options) {
  std::map<std::string, GroundTruth> truths;
  for (const auto& run : layout.runs) {
    auto file = layout.ground_truth.find(run.sequence);
    if (file == layout.ground_truth.end() || truths.count(run.sequence)) continue;
    GroundTruth& truth = truths[run.sequence];
    try {
      truth.trajectory = load_trajectory(file->second, options.format);
    } catch (const std::exception& e) {
      truth.error = e.what();
    }
  }

  std::vector<RunInput> results(layout.runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < layout.runs.size(); i = next++) {
      const RunLocation& run = layout.runs[i];
      auto truth = truths.find(run.sequence);
      results[i] = {run.algorithm, run.sequence,
                    evaluate_one(run, truth == truths.end() ? nullptr : &truth->second, options)};
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, layout.runs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  return results;
}

std::size_t failed_runs(const EvaluationSummary& summary) {
  std::size_t failed = 0;
  for (const auto& entry : summary.entries) {
    for (const auto& run : entry.runs) failed += run.error ? 1 : 0;
  }
  return failed;
}

}  // namespace mapeval::cli
