#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "batch.hpp"
#include "mapeval/error.hpp"
#include "mapeval/grid.hpp"
#include "mapeval/metrics.hpp"
#include "mapeval/report.hpp"
#include "mapeval/trajectory.hpp"

namespace mapeval::cli {

namespace fs = std::filesystem;

namespace {

/// Failure that maps to a specific exit code.
struct CommandError : std::runtime_error {
  CommandError(ExitCode code, const std::string& what) : std::runtime_error(what), code(code) {}
  ExitCode code;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kExitUsage, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw CommandError(kExitUsage, std::string(what) + " not found: " + path.string());
  }
}

/// Writes `content` to `path`, or to `out` when `path` is empty.
void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << content) || !file.flush()) {
    throw CommandError(kExitUsage, "cannot write " + path);
  }
}

/// MetricParams flags. Explicit flags override a --params document, which
/// overrides the defaults.
class ParamFlags {
 public:
  void attach(CLI::App& app) {
    app.add_option("--params", params_file_, "JSON parameter document")->check(CLI::ExistingFile);
    add(app, "--log-sigma", &CornerParams::log_sigma, "LoG scale in cells");
    add(app, "--min-blob-size", &CornerParams::min_blob_size, "smallest structure blob kept, in cells");
    add(app, "--harris-k", &CornerParams::harris_k, "Harris sensitivity k");
    add(app, "--harris-window-sigma", &CornerParams::harris_window_sigma, "Harris window scale");
    add(app, "--rel-threshold", &CornerParams::rel_threshold, "corner threshold relative to peak response");
    add(app, "--nms-radius", &CornerParams::nms_radius, "non-maximum suppression radius");
    add(app, "--structure-threshold", &CornerParams::structure_threshold,
        "structure mask level relative to peak |LoG|");
    add(app, "--u-steps", &EnclosedParams::u_steps, "number of unknown-remap values tried");
    add(app, "--min-hole-area", &EnclosedParams::min_hole_area, "smallest enclosed area, in cells");
    app.add_flag("--ties-occupied", ties_occupied_, "cells equal to the mean count as occupied");
  }

  MetricParams resolve() const {
    MetricParams params;
    if (!params_file_.empty()) params = params_from_json(read_file(params_file_), params);
    for (const auto& apply : appliers_) apply(params);
    if (ties_occupied_) params.proportion.tie_rule = TieRule::TiesOccupied;
    params.validate();
    return params;
  }

 private:
  template <typename Group, typename T>
  void add(CLI::App& app, const std::string& name, T Group::*field, const std::string& help) {
    auto value = std::make_shared<std::optional<T>>();
    std::ostringstream described;
    described << help << " (default " << Group{}.*field << ")";
    app.add_option(name, *value, described.str());
    appliers_.push_back([value, field](MetricParams& params) {
      if (!*value) return;
      if constexpr (std::is_same_v<Group, CornerParams>) {
        params.corner.*field = **value;
      } else {
        params.enclosed.*field = **value;
      }
    });
  }

  std::string params_file_;
  bool ties_occupied_ = false;
  std::vector<std::function<void(MetricParams&)>> appliers_;
};

const std::map<std::string, TrajectoryFormat> kFormats{
    {"tum", TrajectoryFormat::Tum2D},
    {"xytheta", TrajectoryFormat::Xytheta},
};

const std::map<std::string, RenderFormat> kRenderFormats{
    {"json", RenderFormat::Json},
    {"csv", RenderFormat::Csv},
    {"html", RenderFormat::Html},
};

/// MAPEVAL_JOBS if set, otherwise the hardware concurrency.
std::size_t default_jobs() {
  const char* env = std::getenv("MAPEVAL_JOBS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  std::size_t jobs = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, jobs);
  if (ec != std::errc{} || ptr != end || jobs == 0) {
    throw CommandError(kExitUsage, "MAPEVAL_JOBS must be a positive integer, got '" + std::string(env) + "'");
  }
  return jobs;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground-truth-free quality metrics for occupancy grid maps", "mapeval"};
  app.require_subcommand(1);

  PgmConvention pgm;
  auto add_pgm_flags = [&](CLI::App* cmd) {
    cmd->add_option("--unknown-gray", pgm.unknown_gray, "gray value marking unknown cells")
        ->capture_default_str()
        ->check(CLI::Range(0, 65535));
  };

  // eval-map
  std::string map_path;
  std::string output;
  ParamFlags map_flags;
  CLI::App* eval_map = app.add_subcommand("eval-map", "evaluate one occupancy grid map");
  eval_map->add_option("map", map_path, "PGM map file")->required();
  eval_map->add_option("-o,--output", output, "output file (default: stdout)");
  add_pgm_flags(eval_map);
  map_flags.attach(*eval_map);

  // eval-trajectory
  std::string estimated_path;
  std::string reference_path;
  std::string format_name = "tum";
  std::optional<std::string> reference_format_name;
  double max_dt = 0.02;
  CLI::App* eval_traj = app.add_subcommand("eval-trajectory", "RMSE of an estimated trajectory");
  eval_traj->add_option("estimated", estimated_path, "estimated pose log")->required();
  eval_traj->add_option("reference", reference_path, "ground-truth pose log")->required();
  eval_traj->add_option("--format", format_name, "pose log format")
      ->capture_default_str()
      ->check(CLI::IsMember({"tum", "xytheta"}));
  eval_traj->add_option("--gt-format", reference_format_name, "ground-truth format (default: --format)")
      ->check(CLI::IsMember({"tum", "xytheta"}));
  eval_traj->add_option("--max-dt", max_dt, "association window in seconds")->capture_default_str();
  eval_traj->add_option("-o,--output", output, "output file (default: stdout)");

  // batch
  std::string root;
  std::string output_dir;
  std::optional<std::size_t> jobs;
  bool strict = false;
  ParamFlags batch_flags;
  CLI::App* batch = app.add_subcommand("batch", "evaluate a tree of algorithm/sequence/run directories");
  batch->add_option("root", root, "batch root directory")->required();
  batch->add_option("-o,--output-dir", output_dir, "directory for summary.{json,csv,html}")->required();
  batch->add_option("-j,--jobs", jobs, "parallel evaluations (default: $MAPEVAL_JOBS or the core count)")
      ->check(CLI::PositiveNumber);
  batch->add_flag("--strict", strict, "exit with status 1 if any run fails");
  batch->add_option("--format", format_name, "pose log format")
      ->capture_default_str()
      ->check(CLI::IsMember({"tum", "xytheta"}));
  batch->add_option("--max-dt", max_dt, "association window in seconds")->capture_default_str();
  add_pgm_flags(batch);
  batch_flags.attach(*batch);

  // render
  std::string summary_path;
  std::string render_format = "html";
  CLI::App* render_cmd = app.add_subcommand("render", "re-render a JSON summary");
  render_cmd->add_option("summary", summary_path, "summary.json")->required();
  render_cmd->add_option("--format", render_format)
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "html"}));
  render_cmd->add_option("-o,--output", output, "output file (default: stdout)");

  std::vector<const char*> argv{"mapeval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval_map) {
      const MetricParams params = map_flags.resolve();
      pgm.validate();
      require_file(map_path, "map file");
      const OccupancyGrid grid = load_pgm(map_path, pgm);
      emit(metric_report_to_json(evaluate_map(grid, params)), output, out);
      return kExitOk;
    }

    if (*eval_traj) {
      require_file(estimated_path, "estimated trajectory");
      require_file(reference_path, "reference trajectory");
      const TrajectoryFormat format = kFormats.at(format_name);
      const Trajectory estimated = load_trajectory(estimated_path, format);
      const Trajectory reference =
          load_trajectory(reference_path, kFormats.at(reference_format_name.value_or(format_name)));
      const auto pairs = associate(estimated, reference, max_dt);
      nlohmann::json doc = {{"rmse", rmse(pairs)}, {"pairs", pairs.size()}, {"max_dt", max_dt}};
      emit(doc.dump(2) + "\n", output, out);
      return kExitOk;
    }

    if (*batch) {
      BatchOptions options;
      options.params = batch_flags.resolve();
      pgm.validate();
      options.pgm = pgm;
      options.format = kFormats.at(format_name);
      options.max_dt = max_dt;
      options.jobs = jobs ? *jobs : default_jobs();
      if (!(max_dt > 0.0)) throw ParameterError("--max-dt must be positive");

      const BatchLayout layout = discover_runs(root);
      for (const auto& warning : layout.warnings) err << "warning: " << warning << "\n";
      const EvaluationSummary summary = summarize(evaluate_runs(layout, options));

      fs::create_directories(output_dir);
      const fs::path dir(output_dir);
      emit(render(summary, RenderFormat::Json), (dir / "summary.json").string(), out);
      emit(render(summary, RenderFormat::Csv), (dir / "summary.csv").string(), out);
      emit(render(summary, RenderFormat::Html), (dir / "summary.html").string(), out);

      const std::size_t failed = failed_runs(summary);
      for (const auto& entry : summary.entries) {
        for (const auto& run : entry.runs) {
          if (run.error) {
            err << "warning: " << entry.algorithm << "/" << entry.sequence << "/" << run.run_id
                << ": " << *run.error << "\n";
          }
        }
      }
      return strict && failed > 0 ? kExitEvaluationFailure : kExitOk;
    }

    if (*render_cmd) {
      require_file(summary_path, "summary");
      emit(render(parse_summary_json(read_file(summary_path)), kRenderFormats.at(render_format)),
           output, out);
      return kExitOk;
    }
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const AssociationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEvaluationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mapeval::cli
