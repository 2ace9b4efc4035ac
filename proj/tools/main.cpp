#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "orthoface/config.hpp"
#include "orthoface/fixture.hpp"
#include "orthoface/imgproc.hpp"
#include "orthoface/io.hpp"
#include "orthoface/mesh.hpp"
#include "orthoface/pipeline.hpp"
#include "orthoface/pnm.hpp"
#include "png_convert.hpp"

namespace fs = std::filesystem;
using namespace orthoface;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitStage = 3;

pipeline::PipelineConfig config_from(const std::string& path) {
  return path.empty() ? pipeline::PipelineConfig{} : pipeline::load_config(path);
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create output directory");
  return fs::path(dir);
}

std::string out(const fs::path& dir, const char* name) { return (dir / name).string(); }

// "0-9" or "1,4,7" or a mix such as "0-4,10".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(item));
      } else {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw ConfigError("empty seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw ConfigError("bad seed list '" + text + "'");
    }
  }
  if (seeds.empty()) throw ConfigError("no seeds given");
  return seeds;
}

void write_run(const pipeline::PipelineResult& r, const fs::path& dir, bool dump) {
  io::write_text(out(dir, "model.obj"), mesh::export_obj(r.vertices, r.faces));
  io::write_text(out(dir, "landmarks3d.json"), io::landmarks_to_json(r.reconstruction.landmarks));
  io::write_text(out(dir, "report.json"), pipeline::report_to_json(r.report));
  if (!dump) return;
  io::write_text(out(dir, "landmarks2d.json"), io::landmarks_to_json(r.frontal));
  io::write_text(out(dir, "clusters.json"), io::clusters_to_json(r.clusters));
  io::write_text(out(dir, "windows.json"), io::windows_to_json(r.windows));
  pnm::write(out(dir, "frontal_luma.pgm"), r.frontal_luma);
  pnm::write(out(dir, "profile_luma.pgm"), r.profile_luma);
  pnm::write(out(dir, "chroma_mask.pgm"), r.chroma_mask);
  pnm::write(out(dir, "edges.pgm"), r.edges);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal-view 3D face reconstruction"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";

  std::uint64_t seed = 0;
  double noise = 0.0;
  auto* synth = app.add_subcommand("synth", "Render a synthetic frontal/profile fixture");
  synth->add_option("--seed", seed, "Fixture seed");
  synth->add_option("--noise", noise, "Positional jitter in pixels")->check(CLI::NonNegativeNumber);
  synth->add_option("--out-dir", out_dir, "Output directory");

  std::string frontal_path, profile_path, method;
  bool dump = false, no_timing = false;
  auto* run = app.add_subcommand("run", "Reconstruct landmarks and deform the generic model");
  run->add_option("--frontal", frontal_path, "Frontal RGB image (PPM)")->required();
  run->add_option("--profile", profile_path, "Profile gray image (PGM)")->required();
  run->add_option("--config", config_path, "Configuration file");
  run->add_option("--method", method, "Override deformation method")
      ->check(CLI::IsMember({"dffd", "procrustes"}));
  run->add_flag("--dump", dump, "Also write every intermediate");
  run->add_flag("--no-timing", no_timing, "Write zero stage times so output is byte-stable");
  run->add_option("--out-dir", out_dir, "Output directory");

  std::string seeds_text = "0-9";
  std::vector<int> counts = {29, 45, 60};
  auto* bench = app.add_subcommand("bench", "MSE and adaptation time against control point count");
  bench->add_option("--seeds", seeds_text, "Seed list, e.g. 0-9 or 1,3,5");
  bench->add_option("--counts", counts, "Control point counts")->delimiter(',');
  bench->add_option("--noise", noise, "Fixture jitter in pixels")->check(CLI::NonNegativeNumber);
  bench->add_option("--config", config_path, "Configuration file");
  bench->add_flag("--no-timing", no_timing, "Write zero times so output is byte-stable");
  bench->add_option("--out-dir", out_dir, "Output directory");

  auto* clusters = app.add_subcommand("dump-clusters", "Chroma mask and SCDA clusters of a frontal image");
  clusters->add_option("--frontal", frontal_path, "Frontal RGB image (PPM)")->required();
  clusters->add_option("--config", config_path, "Configuration file");
  clusters->add_option("--out-dir", out_dir, "Output directory");

  std::string in_path, out_path;
  auto* convert = app.add_subcommand("convert", "Convert a PNG to PPM (color) or PGM (gray)");
  convert->add_option("input", in_path, "PNG file")->required();
  convert->add_option("output", out_path, "PPM/PGM file")->required();

  auto* model = app.add_subcommand("export-model", "Write the built-in generic model as JSON and OBJ");
  model->add_option("--out-dir", out_dir, "Output directory");

  auto* show = app.add_subcommand("print-config", "Print the configuration in effect");
  show->add_option("--config", config_path, "Configuration file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const auto fx = pipeline::synth_fixture(seed, noise);
      pipeline::write_fixture(fx, out_dir);
    } else if (*run) {
      auto config = config_from(config_path);
      if (method == "dffd") config.method = pipeline::DeformMethod::Dffd;
      if (method == "procrustes") config.method = pipeline::DeformMethod::Procrustes;
      const auto dir = prepare_dir(out_dir);
      auto result = pipeline::run_pipeline_files(frontal_path, profile_path, config);
      if (no_timing) {
        for (auto& st : result.report.stages) st.ms = 0.0;
        result.report.total_ms = 0.0;
      }
      write_run(result, dir, dump);
      fmt::print("normalized_mse {:.9e} total_ms {:.3f}\n", result.report.normalized_mse,
                 result.report.total_ms);
    } else if (*bench) {
      pipeline::BenchOptions options;
      options.config = config_from(config_path);
      options.seeds = parse_seeds(seeds_text);
      options.counts = counts;
      options.noise = noise;
      options.timing = !no_timing;
      const auto dir = prepare_dir(out_dir);
      const auto csv = pipeline::bench_csv(pipeline::run_bench(options));
      io::write_text(out(dir, "bench.csv"), csv);
      fmt::print("{}", csv);
    } else if (*clusters) {
      const auto config = config_from(config_path);
      const auto dir = prepare_dir(out_dir);
      const Raster frontal = pnm::read(frontal_path);
      if (frontal.planes() != 3) throw InvalidInputError("frontal view must be an RGB image");
      const Raster mask = pipeline::chroma_mask(imgproc::rgb_to_ycbcr(frontal).plane(2), config);
      const auto result = scda::scda_cluster(scda::micro_features(mask), config.scda);
      pnm::write(out(dir, "chroma_mask.pgm"), mask);
      io::write_text(out(dir, "clusters.json"), io::clusters_to_json(result));
    } else if (*convert) {
      pnm::write(out_path, tools::read_png(in_path));
    } else if (*model) {
      const auto dir = prepare_dir(out_dir);
      const auto m = mesh::build_generic_model();
      io::write_text(out(dir, "generic_model.json"), mesh::model_to_json(m));
      io::write_text(out(dir, "generic_model.obj"), mesh::export_obj(m.vertices, m.faces));
    } else if (*show) {
      fmt::print("{}", pipeline::to_text(config_from(config_path)));
    }
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    fmt::print(stderr, "{} error: {}\n", to_string(e.kind()), e.what());
    return kExitStage;
  }
  return 0;
}
