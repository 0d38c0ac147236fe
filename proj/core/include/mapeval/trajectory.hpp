#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mapeval {

struct Pose {
  double t = 0.0;  ///< seconds
  double x = 0.0;  ///< meters
  double y = 0.0;  ///< meters
  /// Heading in (-pi, pi]. Not used by RMSE.
  std::optional<double> theta;

  friend bool operator==(const Pose&, const Pose&) = default;
};

/// Non-empty pose sequence with strictly increasing timestamps.
class Trajectory {
 public:
  /// Throws PreconditionError if empty, not strictly increasing in t, or if
  /// any timestamp is non-finite.
  explicit Trajectory(std::vector<Pose> poses);

  std::span<const Pose> poses() const noexcept { return poses_; }
  std::size_t size() const noexcept { return poses_.size(); }
  const Pose& operator[](std::size_t i) const noexcept { return poses_[i]; }

 private:
  std::vector<Pose> poses_;
};

enum class TrajectoryFormat {
  /// `t x y z qx qy qz qw`; z, roll and pitch are discarded, yaw is kept.
  Tum2D,
  /// `t x y theta`.
  Xytheta,
};

/// Parses a pose log. Blank lines and lines starting with `#` are skipped.
/// Poses are sorted by timestamp; repeated timestamps are rejected with a
/// FormatError and non-numeric fields with a ParseError naming the line.
Trajectory parse_trajectory(std::string_view text, TrajectoryFormat format);
Trajectory load_trajectory(const std::filesystem::path& path, TrajectoryFormat format);

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

struct PosePair {
  Pose estimated;
  Pose reference;
};

/// Greedy nearest-timestamp association. Candidate pairs within max_dt are
/// accepted in order of increasing |dt| (ties: earlier estimate, then earlier
/// reference) provided neither pose is already used and the pair does not
/// cross an accepted pair in time. Result is sorted by estimated timestamp.
/// Throws ParameterError unless max_dt > 0 (infinity allowed) and
/// AssociationError if no pair is formed.
std::vector<PosePair> associate(const Trajectory& estimated, const Trajectory& reference,
                                double max_dt);

/// Root-mean-square planar position error, without any alignment.
double rmse(std::span<const PosePair> pairs);

struct RunStatistics {
  std::vector<double> per_run_rmse;
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single run.
  double stddev = 0.0;

  friend bool operator==(const RunStatistics&, const RunStatistics&) = default;
};

RunStatistics aggregate_runs(std::span<const double> values);

}  // namespace mapeval
