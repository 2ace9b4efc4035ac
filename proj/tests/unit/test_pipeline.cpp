#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "orthoface/config.hpp"
#include "orthoface/fixture.hpp"
#include "orthoface/io.hpp"
#include "orthoface/pipeline.hpp"
#include "orthoface/pnm.hpp"
#include "support/oracles.hpp"

using namespace orthoface;
using namespace orthoface::pipeline;

namespace {

/// Largest Hungarian-matched 3D distance between reconstruction and truth.
double matched_error(const std::vector<depth::Landmark3D>& got, const std::vector<depth::Landmark3D>& truth,
                     double* mean = nullptr) {
  const std::size_t n = got.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i][j] = std::sqrt((got[i].x - truth[j].x) * (got[i].x - truth[j].x) +
                             (got[i].y - truth[j].y) * (got[i].y - truth[j].y) +
                             (got[i].z - truth[j].z) * (got[i].z - truth[j].z));
  const auto match = oracle::hungarian(cost);
  double worst = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, cost[i][static_cast<std::size_t>(match[i])]);
    sum += cost[i][static_cast<std::size_t>(match[i])];
  }
  if (mean != nullptr) *mean = sum / static_cast<double>(n);
  return worst;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("orthoface_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config text round trip") {
  PipelineConfig c;
  c.scda.alpha = 7;
  c.scda.radius = 2.25;
  c.chroma_threshold = 150;
  c.polarity = imgproc::Polarity::Dark;
  c.method = DeformMethod::Procrustes;
  c.soic.z_min = 4;
  c.quota = {8, 8, 14, 15, 15};
  const auto text = to_text(c);
  const auto back = parse_config(text);
  CHECK(to_text(back) == text);
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(back) != config_hash(PipelineConfig{}));
  CHECK(to_text(parse_config(to_text(PipelineConfig{}))) == to_text(PipelineConfig{}));
}

TEST_CASE("config parsing of a partial file") {
  const auto c = parse_config("# tuned\n[scda]\nradius = 2\nalpha = 6\n\n[deform]\nmethod = \"procrustes\"\n");
  CHECK(c.scda.radius == 2.0);
  CHECK(c.scda.alpha == 6);
  CHECK(c.method == DeformMethod::Procrustes);
  CHECK(c.canny_high == 40.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[scda]\nalpha = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scda]\ncolour = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scda]\nalpha = 3\nalpha = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[nowhere]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scda]\nalpha = three\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[landmarks]\nquota = [10, 10, 10, 10, 10]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[edges]\nlow = 50\nhigh = 40\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/orthoface.conf"), IoError);

  PipelineConfig c;
  c.scda.alpha = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  const auto fx = synth_fixture(0, 0.0);
  CHECK_THROWS_AS(run_pipeline(fx.frontal, fx.profile, c), ConfigError);
}

TEST_CASE("fixture determinism and symmetry") {
  const auto a = synth_fixture(6, 0.0);
  const auto b = synth_fixture(6, 0.0);
  CHECK(a.frontal == b.frontal);
  CHECK(a.profile == b.profile);
  CHECK(io::landmarks_to_json(a.truth) == io::landmarks_to_json(b.truth));
  CHECK_FALSE(synth_fixture(7, 0.0).frontal == a.frontal);
  CHECK(synth_fixture(6, 1.0).frontal == synth_fixture(6, 1.0).frontal);

  const auto layout = features::build_layout(a.layout);
  Eigen::Vector3d left = Eigen::Vector3d::Zero(), right = Eigen::Vector3d::Zero();
  int nl = 0, nr = 0;
  for (const auto& t : a.truth) {
    const auto w = layout[static_cast<std::size_t>(t.id)].window;
    if (w == features::FeatureWindow::LeftEye) {
      left += Eigen::Vector3d(t.x, t.y, t.z);
      ++nl;
    } else if (w == features::FeatureWindow::RightEye) {
      right += Eigen::Vector3d(t.x, t.y, t.z);
      ++nr;
    }
  }
  const Eigen::Vector3d o = 0.5 * (left / nl + right / nr);
  for (const auto& [hidden, visible] : a.sides.mirror_pairs) {
    const auto& h = a.truth[static_cast<std::size_t>(hidden)];
    const auto& v = a.truth[static_cast<std::size_t>(visible)];
    CHECK(std::abs((Eigen::Vector3d(h.x, h.y, h.z) - o).norm() - (Eigen::Vector3d(v.x, v.y, v.z) - o).norm()) <= 1e-12);
  }

  std::set<int> amplitudes;
  for (int id = 0; id < 60; ++id) amplitudes.insert(blob_amplitude(id));
  CHECK(amplitudes.size() == 60);
  CHECK_THROWS_AS(synth_fixture(0, -1.0), InvalidInputError);
}

TEST_CASE("noise-free fixture reconstructs every landmark") {
  for (const std::uint64_t seed : {0u, 1u, 2u, 3u, 4u}) {
    const auto fx = synth_fixture(seed, 0.0);
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_pipeline(fx.frontal, fx.profile, {});
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    REQUIRE(r.reconstruction.landmarks.size() == 60);
    CHECK(matched_error(r.reconstruction.landmarks, fx.truth) <= 2.0);
    CHECK(r.report.normalized_mse <= 1e-8);
    CHECK(r.report.procrustes_mse > 0.0);
    CHECK(r.report.frontal_landmarks == 60);
    CHECK(r.report.profile_matches == 31);
    CHECK(r.report.hidden_landmarks == 29);
    CHECK(r.vertices.size() == 140);
    CHECK(r.faces.size() == 264);
    CHECK(wall < 5.0);
    CHECK_NOTHROW((mesh::GenericModel{r.vertices, r.faces, mesh::build_generic_model().control_map}.validate()));
  }
}

TEST_CASE("stage durations add up to the total") {
  const auto fx = synth_fixture(8, 0.0);
  const auto r = run_pipeline(fx.frontal, fx.profile, {});
  std::vector<std::string> names;
  double sum = 0.0;
  for (const auto& s : r.report.stages) {
    names.push_back(s.stage);
    sum += s.ms;
  }
  CHECK(names == std::vector<std::string>{"preprocess", "edges", "chroma", "scda", "windows", "landmarks",
                                          "soic", "symmetry", "pretransform", "align", "deform"});
  CHECK(sum <= r.report.total_ms);
  CHECK(sum >= 0.9 * r.report.total_ms);
}

TEST_CASE("procrustes-only runs skip the deformation") {
  const auto fx = synth_fixture(3, 0.0);
  PipelineConfig c;
  c.method = DeformMethod::Procrustes;
  const auto r = run_pipeline(fx.frontal, fx.profile, c);
  CHECK(r.report.normalized_mse == r.report.procrustes_mse);
  CHECK(r.report.stages.back().stage == "align");
}

TEST_CASE("pipeline outputs are deterministic") {
  const auto fx = synth_fixture(11, 0.5);
  const auto a = run_pipeline(fx.frontal, fx.profile, {});
  const auto b = run_pipeline(fx.frontal, fx.profile, {});
  CHECK(mesh::export_obj(a.vertices, a.faces) == mesh::export_obj(b.vertices, b.faces));
  CHECK(io::landmarks_to_json(a.reconstruction.landmarks) == io::landmarks_to_json(b.reconstruction.landmarks));
  CHECK(io::landmarks_to_json(a.frontal) == io::landmarks_to_json(b.frontal));
  CHECK(io::clusters_to_json(a.clusters) == io::clusters_to_json(b.clusters));
  CHECK(io::windows_to_json(a.windows) == io::windows_to_json(b.windows));
}

TEST_CASE("reconstruction error grows with noise") {
  double clean = 0.0, noisy = 0.0;
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const double noise : {0.0, 2.0}) {
      const auto fx = synth_fixture(seed, noise);
      try {
        const auto r = run_pipeline(fx.frontal, fx.profile, {});
        double mean = 0.0;
        matched_error(r.reconstruction.landmarks, fx.truth, &mean);
        (noise == 0.0 ? clean : noisy) += mean / 10.0;
      } catch (const StageError&) {
        CHECK(noise > 0.0);
        ++failures;
        noisy += 100.0 / 10.0;
      }
    }
  }
  MESSAGE("mean error at noise 0: " << clean << " px, at noise 2: " << noisy << " px, failures " << failures);
  CHECK(clean <= 1e-9);
  CHECK(noisy >= clean);
}

TEST_CASE("stage failures name the stage") {
  const Raster blank(64, 64, 3, PlaneSemantics::RGB, 90);
  try {
    run_pipeline(blank, Raster::gray(64, 64, 90), {});
    FAIL("blank input accepted");
  } catch (const StageError& e) {
    CHECK(e.stage() == "edges");
    CHECK(e.cause() == ErrorKind::ExtractionFailure);
    CHECK(std::string(e.what()).find("edges") != std::string::npos);
  }
  try {
    run_pipeline(Raster::gray(8, 8), Raster::gray(8, 8), {});
    FAIL("gray frontal accepted");
  } catch (const StageError& e) {
    CHECK(e.stage() == "preprocess");
    CHECK(e.cause() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("unreadable inputs raise i/o errors naming the file") {
  const auto dir = scratch_dir("io");
  const auto fx = synth_fixture(0, 0.0);
  write_fixture(fx, dir.string());
  std::string bytes = io::read_text((dir / "profile.pgm").string());
  bytes.resize(bytes.size() / 2);
  const auto cut = (dir / "cut.pgm").string();
  io::write_text(cut, bytes);
  try {
    run_pipeline_files((dir / "frontal.ppm").string(), cut, {});
    FAIL("truncated file accepted");
  } catch (const IoError& e) {
    CHECK(e.path() == cut);
  }
  const auto r = run_pipeline_files((dir / "frontal.ppm").string(), (dir / "profile.pgm").string(), {});
  CHECK(r.report.normalized_mse <= 1e-8);
  std::filesystem::remove_all(dir);
}

TEST_CASE("landmark json round trip") {
  const auto fx = synth_fixture(2, 0.0);
  auto lm = fx.truth;
  lm[3].clamped = true;
  lm[5].side = depth::Side::Hidden;
  const auto text = io::landmarks_to_json(lm);
  const auto back = io::landmarks3d_from_json(text);
  REQUIRE(back.size() == lm.size());
  CHECK(io::landmarks_to_json(back) == text);
  CHECK(back[3].clamped);
  CHECK(back[5].side == depth::Side::Hidden);
  CHECK_THROWS_AS(io::landmarks3d_from_json("[{\"id\": 1}]"), InvalidInputError);
}

TEST_CASE("report json carries the fit summary") {
  const auto fx = synth_fixture(1, 0.0);
  const auto r = run_pipeline(fx.frontal, fx.profile, {});
  const auto text = report_to_json(r.report);
  CHECK(text.find("\"normalized_mse\"") != std::string::npos);
  CHECK(text.find("\"stages\"") != std::string::npos);
  CHECK(text.find("\"method\": \"dffd\"") != std::string::npos);
}

TEST_CASE("control subsets") {
  CHECK(subsample_ids(60).size() == 60);
  CHECK(subsample_ids(4) == std::vector<int>{0, 15, 30, 45});
  const auto ids = subsample_ids(29);
  CHECK(ids.size() == 29);
  CHECK(std::set<int>(ids.begin(), ids.end()).size() == 29);
  CHECK_THROWS_AS(subsample_ids(61), InvalidInputError);
  CHECK_THROWS_AS(subsample_ids(3), InvalidInputError);
}

TEST_CASE("bench table") {
  BenchOptions opt;
  for (std::uint64_t s = 0; s < 4; ++s) opt.seeds.push_back(s);
  opt.timing = false;
  const auto rows = run_bench(opt);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.mse_mean >= 0.0);
    CHECK(r.mse_std >= 0.0);
    CHECK(r.time_ms_mean == 0.0);
    if (r.method == DeformMethod::Dffd) CHECK(r.mse_mean <= 1e-8);
  }
  const auto csv = bench_csv(rows);
  CHECK(csv == bench_csv(run_bench(opt)));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "count,method,mse_mean,mse_std,time_ms_mean");
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(n == 6);

  opt.counts = {61};
  CHECK_THROWS_AS(run_bench(opt), InvalidInputError);
}

TEST_CASE("bench ensemble mean is stable when the ensemble doubles") {
  BenchOptions small, large;
  for (std::uint64_t s = 0; s < 10; ++s) small.seeds.push_back(s);
  for (std::uint64_t s = 0; s < 20; ++s) large.seeds.push_back(s);
  small.timing = large.timing = false;
  const auto a = run_bench(small);
  const auto b = run_bench(large);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].method != DeformMethod::Procrustes) continue;
    const double se = b[i].mse_std / std::sqrt(20.0);
    CHECK(std::abs(a[i].mse_mean - b[i].mse_mean) < 3.0 * se);
  }
}
