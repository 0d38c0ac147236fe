// Acceptance gate. Each criterion prints one PASS/FAIL line; the exit status
// is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "batch.hpp"
#include "cli.hpp"
#include "fixtures.hpp"
#include "mapeval/grid.hpp"
#include "mapeval/imgproc.hpp"
#include "mapeval/metrics.hpp"
#include "mapeval/report.hpp"
#include "mapeval/trajectory.hpp"
#include "oracles.hpp"

namespace {

using namespace mapeval;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool condition, const std::string& why) {
    if (!condition) fail(why);
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

Verdict otsu_oracle() {
  Verdict v;
  std::mt19937_64 rng(1001);
  const auto start = Clock::now();
  for (int i = 0; i < 500 && v.ok; ++i) {
    const IntensityImage img =
        fixture::random_intensity(rng, fixture::uniform(rng, 2, 64), fixture::uniform(rng, 1, 64));
    const std::size_t expected = oracle::exhaustive_otsu_split(img, 256);
    const OtsuResult got = otsu_threshold(img, 256);
    v.require(!got.degenerate && got.split_bin == expected,
              "image " + std::to_string(i) + ": split " + std::to_string(got.split_bin) + " vs oracle " +
                  std::to_string(expected));
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed < 10.0, fmt("took %.2f s", elapsed));
  if (v.ok) v.detail = "500 images, " + fmt("%.2f s", elapsed);
  return v;
}

Verdict hole_oracle() {
  Verdict v;
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  const auto start = Clock::now();
  for (int i = 0; i < 500 && v.ok; ++i) {
    const BinaryImage img = fixture::random_binary(rng, fixture::uniform(rng, 1, 64), fixture::uniform(rng, 1, 64),
                                                   density(rng));
    const std::size_t expected = oracle::enclosed_background_areas(img).size();
    const std::size_t got = trace_contours(img).hole_count();
    v.require(got == expected, "image " + std::to_string(i) + ": " + std::to_string(got) + " holes vs oracle " +
                                   std::to_string(expected));
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, fmt("took %.2f s", elapsed));
  if (v.ok) v.detail = "500 images, " + fmt("%.2f s", elapsed);
  return v;
}

bool same_partition(const ComponentLabels& lib, const oracle::Components& ref) {
  std::map<std::int32_t, int> forward;
  std::map<int, std::int32_t> backward;
  const auto labels = lib.labels.pixels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if ((labels[i] == 0) != (ref.labels[i] == 0)) return false;
    if (labels[i] == 0) continue;
    const auto [f, f_new] = forward.emplace(labels[i], ref.labels[i]);
    const auto [b, b_new] = backward.emplace(ref.labels[i], labels[i]);
    if (f->second != ref.labels[i] || b->second != labels[i]) return false;
  }
  return true;
}

Verdict component_oracle() {
  Verdict v;
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  for (int i = 0; i < 500 && v.ok; ++i) {
    const BinaryImage img = fixture::random_binary(rng, fixture::uniform(rng, 1, 64), fixture::uniform(rng, 1, 64),
                                                   density(rng));
    for (const auto conn : {Connectivity::Four, Connectivity::Eight}) {
      const ComponentLabels lib = connected_components(img, conn);
      const oracle::Components ref = oracle::flood_fill_components(img, static_cast<int>(conn));
      v.require(lib.count() == ref.count() && same_partition(lib, ref),
                "image " + std::to_string(i) + ", connectivity " + std::to_string(static_cast<int>(conn)));
    }
  }
  if (v.ok) v.detail = "500 images x 2 connectivities";
  return v;
}

double nearest_vertex(const Corner& c, const fixture::RoomMap& map) {
  double best = 1e9;
  for (const auto& [x, y] : map.vertices()) {
    best = std::min(best, std::hypot(static_cast<double>(c.x) - static_cast<double>(x),
                                     static_cast<double>(c.y) - static_cast<double>(y)));
  }
  return best;
}

Verdict room_geometry() {
  Verdict v;
  std::mt19937_64 rng(1004);
  const int cases = 40;
  for (int i = 0; i < cases && v.ok; ++i) {
    const std::size_t dots = static_cast<std::size_t>(i % 6);
    const fixture::RoomCase rc = fixture::random_room_case(rng, dots);
    const std::string tag = "case " + std::to_string(i) + " (" + std::to_string(dots) + " dots)";

    const CornerResult single = corner_count(rc.single.build());
    v.require(single.count == 4, tag + ": single room has " + std::to_string(single.count) + " corners");
    for (const Corner& c : single.corners) {
      v.require(nearest_vertex(c, rc.single) <= 2.0, tag + ": corner at (" + std::to_string(c.x) + "," +
                                                          std::to_string(c.y) + ") far from every vertex");
    }
    const std::size_t enclosed = enclosed_area_count(rc.single.build()).max_count;
    v.require(enclosed == 1, tag + ": single room has " + std::to_string(enclosed) + " enclosed areas");

    const MetricReport twin = evaluate_map(rc.twin.build());
    v.require(twin.corner_count == 8, tag + ": twin rooms have " + std::to_string(twin.corner_count) + " corners");
    v.require(twin.enclosed_area_count == 2,
              tag + ": twin rooms have " + std::to_string(twin.enclosed_area_count) + " enclosed areas");

    for (fixture::RoomMap map : {rc.single, rc.twin}) {
      const MetricReport dotted = evaluate_map(map.build());
      map.dots.clear();
      const MetricReport clean = evaluate_map(map.build());
      v.require(dotted.corner_count == clean.corner_count && dotted.enclosed_area_count == clean.enclosed_area_count,
                tag + ": dots changed a count");
    }
  }
  if (v.ok) v.detail = std::to_string(cases) + " random layouts with 0..5 dots";
  return v;
}

Verdict proportion_arithmetic() {
  Verdict v;
  OccupancyGrid fixture(10, 10, CellState::known(0.1));
  for (std::size_t i = 0; i < 20; ++i) fixture.set(i % 10, i / 10 * 5, CellState::known(0.9));
  const ProportionResult r = occupied_proportion(fixture);
  v.require(r.threshold == 0.26, fmt("threshold %.17g", r.threshold));
  v.require(r.proportion == 0.20, fmt("proportion %.17g", r.proportion));

  std::mt19937_64 rng(1005);
  for (int i = 0; i < 300 && v.ok; ++i) {
    const OccupancyGrid g =
        fixture::random_lattice_grid(rng, fixture::uniform(rng, 1, 40), fixture::uniform(rng, 1, 40));
    for (const auto rule : {TieRule::TiesFree, TieRule::TiesOccupied}) {
      const ProportionResult p = occupied_proportion(g, {rule});
      v.require(p.occupied_cells + p.free_cells + p.unknown_cells == g.width() * g.height(),
                "counts do not sum on grid " + std::to_string(i));
    }
  }
  if (v.ok) v.detail = "threshold 0.26, proportion 0.2, 300 random grids";
  return v;
}

Trajectory line(double dx, double dy) {
  std::vector<Pose> poses;
  for (int i = 0; i < 50; ++i) poses.push_back({0.1 * i, 0.5 * i + dx, -0.2 * i + dy, std::nullopt});
  return Trajectory(std::move(poses));
}

Verdict rmse_analytics() {
  Verdict v;
  const Trajectory ref = line(0, 0);
  const double same = rmse(associate(ref, ref, 0.02));
  v.require(std::abs(same) <= 1e-12, fmt("identical rmse %.3g", same));
  const double shifted = rmse(associate(line(3, 4), ref, 0.02));
  v.require(std::abs(shifted - 5.0) <= 1e-9, fmt("shifted rmse %.17g", shifted));

  const RunStatistics s = aggregate_runs(std::vector<double>{1, 2, 3});
  v.require(std::abs(s.mean - 2.0) <= 1e-12, fmt("mean %.17g", s.mean));
  v.require(std::abs(s.stddev - 1.0) <= 1e-12, fmt("stddev %.17g", s.stddev));

  RunInput in{"alg", "seq", {"run0", MetricReport{}, 0.239, std::nullopt}};
  EvaluationSummary summary = summarize({in});
  summary.entries[0].rmse = Stat{0.239, 0.011};
  const std::string html = render(summary, RenderFormat::Html);
  v.require(html.find(">0.239 \xC2\xB1 0.011<") != std::string::npos, "HTML lacks the 0.239 \xC2\xB1 0.011 cell");
  if (v.ok) v.detail = "rmse 0 and 5, mean 2 stddev 1, cell 0.239 \xC2\xB1 0.011";
  return v;
}

double max_abs(const IntensityImage& img) {
  double m = 0.0;
  for (double x : img.pixels()) m = std::max(m, std::abs(x));
  return m;
}

Verdict kernel_numerics() {
  Verdict v;
  for (const double c : {0.0, 0.1, 0.5, 205.0 / 255.0, 1.0}) {
    const IntensityImage flat(23, 17, c);
    v.require(max_abs(laplacian_of_gaussian(flat, 1.5)) <= 1e-9, fmt("LoG of constant %g is nonzero", c));
    v.require(gaussian_smooth(flat, 1.5) == flat, fmt("Gaussian changed constant %g", c));
    const IntensityImage harris = harris_response(flat, 0.04, 1.0);
    v.require(std::all_of(harris.pixels().begin(), harris.pixels().end(), [](double x) { return x == 0.0; }),
              fmt("Harris of constant %g is nonzero", c));
  }
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> value(-1, 1);
  for (int i = 0; i < 5; ++i) {
    IntensityImage img(16, 16);
    for (double& x : img.pixels()) x = value(rng);
    const IntensityImage got = laplacian(img);
    const IntensityImage want = oracle::laplacian_direct(img);
    for (std::size_t k = 0; k < got.size(); ++k) {
      v.require(std::abs(got.pixels()[k] - want.pixels()[k]) <= 1e-9, "Laplacian differs on image " + std::to_string(i));
    }
  }
  if (v.ok) v.detail = "constants through LoG, Gaussian, Harris; Laplacian on 5 images";
  return v;
}

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Verdict batch_determinism() {
  Verdict v;
  fixture::TempDir dir;
  const fs::path root = dir.path() / "tree";
  fixture::write_batch_tree(root, {"alpha", "beta"}, {"lab", "hall"}, 3, {"lab"});

  std::vector<std::string> outputs;
  for (const char* jobs : {"1", "3", "1"}) {
    const fs::path out = dir.path() / ("out" + std::to_string(outputs.size()));
    const int code = run_cli({"batch", root.string(), "-o", out.string(), "-j", jobs});
    v.require(code == 0, "batch exited with " + std::to_string(code));
    outputs.push_back(fixture::read_text(out / "summary.json") + fixture::read_text(out / "summary.csv") +
                      fixture::read_text(out / "summary.html"));
  }
  v.require(outputs[0] == outputs[1] && outputs[1] == outputs[2], "repeated batch output differs");

  const std::string reference = fixture::read_text(dir.path() / "out0" / "summary.json");
  const EvaluationSummary parsed = parse_summary_json(reference);
  v.require(parsed.entries.size() == 4, "expected 4 summary entries");
  for (const auto& e : parsed.entries) v.require(e.runs.size() == 3, "expected 3 runs per entry");

  std::mt19937_64 rng(1008);
  for (int trial = 0; trial < 5; ++trial) {
    cli::BatchLayout layout = cli::discover_runs(root);
    std::shuffle(layout.runs.begin(), layout.runs.end(), rng);
    cli::BatchOptions options;
    options.jobs = 1 + static_cast<std::size_t>(trial % 3);
    const std::string json = render(summarize(cli::evaluate_runs(layout, options)), RenderFormat::Json);
    v.require(json == reference, "shuffled enumeration changed the summary (trial " + std::to_string(trial) + ")");
  }
  if (v.ok) v.detail = "2x2x3 tree, 3 repeats and 5 shuffles byte-identical";
  return v;
}

std::string header(const char* magic, const OccupancyGrid& g) {
  return std::string(magic) + "\n# acceptance\n" + std::to_string(g.width()) + " " + std::to_string(g.height()) +
         "\n255\n";
}

Verdict pgm_round_trip() {
  Verdict v;
  std::mt19937_64 rng(1009);
  for (int i = 0; i < 100 && v.ok; ++i) {
    const OccupancyGrid g =
        fixture::random_lattice_grid(rng, fixture::uniform(rng, 1, 48), fixture::uniform(rng, 1, 48));
    v.require(parse_pgm(write_pgm(g)) == g, "grid " + std::to_string(i) + " changed through write/parse");

    std::string p2 = header("P2", g);
    std::string p5 = header("P5", g);
    for (std::size_t y = 0; y < g.height(); ++y) {
      for (std::size_t x = 0; x < g.width(); ++x) {
        const CellState c = g.at(x, y);
        const long gray = c.is_unknown() ? 205 : std::lround((1.0 - c.probability()) * 255.0);
        p2 += std::to_string(gray) + (x + 1 == g.width() ? "\n" : " ");
        p5 += static_cast<char>(static_cast<unsigned char>(gray));
      }
    }
    const OccupancyGrid ascii = parse_pgm(p2);
    v.require(ascii == parse_pgm(p5), "P2 and P5 disagree on grid " + std::to_string(i));
    v.require(ascii == g, "hand-encoded raster differs from grid " + std::to_string(i));
  }
  if (v.ok) v.detail = "100 lattice grids, P2 == P5";
  return v;
}

Verdict enclosed_u_iteration() {
  Verdict v;
  fixture::RoomMap m;
  m.width = 70;
  m.height = 40;
  m.rooms = {{5, 6, 35, 33}, {35, 6, 64, 33}};
  for (std::size_t y = 15; y <= 21; ++y) m.unknown_cells.emplace_back(35, y);
  const MetricReport r = evaluate_map(m.build());
  v.require(r.enclosed_area_count == 2, "enclosed_area_count " + std::to_string(r.enclosed_area_count));
  v.require(r.enclosed_best_u == 1.0, fmt("best u %g", r.enclosed_best_u));
  v.require(r.enclosed_per_u.size() == r.params_used.enclosed.u_steps, "per-u curve is incomplete");
  v.require(!r.enclosed_per_u.empty() && r.enclosed_per_u.front().u == 1.0 && r.enclosed_per_u.front().count == 2,
            "count at u = 1.0 is not 2");
  if (v.ok) {
    std::string curve;
    for (const auto& p : r.enclosed_per_u) curve += std::to_string(p.count);
    v.detail = "count 2 at u = 1.0, per-u counts " + curve;
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"otsu matches exhaustive search", otsu_oracle},
      {"hole count matches flood fill", hole_oracle},
      {"components match flood fill", component_oracle},
      {"synthetic room geometry", room_geometry},
      {"proportion arithmetic", proportion_arithmetic},
      {"rmse analytics and table cell", rmse_analytics},
      {"kernel numerics", kernel_numerics},
      {"batch determinism and order invariance", batch_determinism},
      {"pgm round trip", pgm_round_trip},
      {"enclosed-area u iteration", enclosed_u_iteration},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s: %s (%s)\n", i + 1, v.ok ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
