#include "mapeval/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "mapeval/error.hpp"

namespace mapeval {

Trajectory::Trajectory(std::vector<Pose> poses) : poses_(std::move(poses)) {
  if (poses_.empty()) throw PreconditionError("trajectory must contain at least one pose");
  for (std::size_t i = 0; i < poses_.size(); ++i) {
    if (!std::isfinite(poses_[i].t)) throw PreconditionError("trajectory timestamp is not finite");
    if (i > 0 && !(poses_[i].t > poses_[i - 1].t)) {
      throw PreconditionError("trajectory timestamps must be strictly increasing");
    }
  }
}

double normalize_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(radians, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
  std::string_view digits = field;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || end != digits.data() + digits.size() || !std::isfinite(value)) {
    throw ParseError("expected a finite number, got '" + std::string(field) + "'", line_no);
  }
  return value;
}

double yaw_from_quaternion(double qx, double qy, double qz, double qw) {
  return std::atan2(2.0 * (qw * qz + qx * qy), 1.0 - 2.0 * (qy * qy + qz * qz));
}

}  // namespace

Trajectory parse_trajectory(std::string_view text, TrajectoryFormat format) {
  const std::size_t expected = format == TrajectoryFormat::Tum2D ? 8 : 4;
  std::vector<std::pair<Pose, std::size_t>> poses;  // pose, line number

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::vector<double> v;
    v.reserve(fields.size());
    for (auto f : fields) v.push_back(parse_number(f, line_no));

    Pose pose{v[0], v[1], v[2], std::nullopt};
    if (format == TrajectoryFormat::Tum2D) {
      pose.theta = normalize_angle(yaw_from_quaternion(v[4], v[5], v[6], v[7]));
    } else {
      pose.theta = normalize_angle(v[3]);
    }
    poses.emplace_back(pose, line_no);
  }

  std::stable_sort(poses.begin(), poses.end(),
                   [](const auto& a, const auto& b) { return a.first.t < b.first.t; });
  for (std::size_t i = 1; i < poses.size(); ++i) {
    if (poses[i].first.t == poses[i - 1].first.t) {
      throw FormatError("duplicate timestamp " + std::to_string(poses[i].first.t) + " on lines " +
                            std::to_string(poses[i - 1].second) + " and " +
                            std::to_string(poses[i].second),
                        0);
    }
  }
  if (poses.empty()) throw FormatError("trajectory contains no poses", 0);

  std::vector<Pose> sorted;
  sorted.reserve(poses.size());
  for (auto& p : poses) sorted.push_back(p.first);
  return Trajectory(std::move(sorted));
}

Trajectory load_trajectory(const std::filesystem::path& path, TrajectoryFormat format) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open trajectory file '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  try {
    return parse_trajectory(text, format);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), path.string());
  } catch (const FormatError& e) {
    throw FormatError(e.message(), e.offset(), path.string());
  }
}

std::vector<PosePair> associate(const Trajectory& estimated, const Trajectory& reference,
                                double max_dt) {
  if (!(max_dt > 0.0)) {
    throw ParameterError("association window max_dt must be positive");
  }
  const auto est = estimated.poses();
  const auto ref = reference.poses();

  struct Candidate {
    double dt;
    std::size_t est;
    std::size_t ref;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double t = est[i].t;
    // The doubled window absorbs rounding in t +- max_dt; dt decides membership.
    auto lo = std::lower_bound(ref.begin(), ref.end(), t - 2.0 * max_dt,
                               [](const Pose& p, double v) { return p.t < v; });
    for (auto it = lo; it != ref.end() && it->t <= t + 2.0 * max_dt; ++it) {
      const double dt = std::abs(it->t - t);
      if (dt <= max_dt) {
        candidates.push_back({dt, i, static_cast<std::size_t>(it - ref.begin())});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.dt, a.est, a.ref) < std::tie(b.dt, b.est, b.ref);
  });

  std::map<std::size_t, std::size_t> accepted;  // est index -> ref index
  std::vector<bool> ref_used(ref.size(), false);
  for (const auto& c : candidates) {
    if (ref_used[c.ref] || accepted.count(c.est) != 0) continue;
    // Accepted pairs are monotone, so checking the neighbours in est order
    // is enough to rule out a crossing.
    const auto next = accepted.upper_bound(c.est);
    if (next != accepted.end() && next->second < c.ref) continue;
    if (next != accepted.begin() && std::prev(next)->second > c.ref) continue;
    accepted.emplace(c.est, c.ref);
    ref_used[c.ref] = true;
  }

  if (accepted.empty()) {
    throw AssociationError("no estimated pose lies within " + std::to_string(max_dt) +
                           " s of a reference pose; try a larger max_dt");
  }
  std::vector<PosePair> pairs;
  pairs.reserve(accepted.size());
  for (const auto& [e, r] : accepted) pairs.push_back({est[e], ref[r]});
  return pairs;
}

double rmse(std::span<const PosePair> pairs) {
  if (pairs.empty()) throw PreconditionError("RMSE needs at least one pose pair");
  double sum = 0.0;
  for (const auto& p : pairs) {
    const double dx = p.estimated.x - p.reference.x;
    const double dy = p.estimated.y - p.reference.y;
    sum += dx * dx + dy * dy;
  }
  return std::sqrt(sum / static_cast<double>(pairs.size()));
}

RunStatistics aggregate_runs(std::span<const double> values) {
  if (values.empty()) throw PreconditionError("cannot aggregate an empty list of runs");
  RunStatistics stats;
  stats.per_run_rmse.assign(values.begin(), values.end());

  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    stats.mean = values.front();
    return stats;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const auto n = static_cast<double>(values.size());
  // Rounding may push the quotient past the extremes of nearly equal inputs.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  stats.mean = std::clamp(sum / n, *lo, *hi);
  double sq = 0.0;
  for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
  stats.stddev = std::sqrt(sq / (n - 1.0));
  return stats;
}

}  // namespace mapeval
