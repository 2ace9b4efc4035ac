#include <random>

#include <benchmark/benchmark.h>

#include "orthoface/fixture.hpp"
#include "orthoface/imgproc.hpp"
#include "orthoface/mesh.hpp"
#include "orthoface/pipeline.hpp"
#include "orthoface/scda.hpp"

using namespace orthoface;

namespace {

const pipeline::SyntheticFixture& fixture() {
  static const auto fx = pipeline::synth_fixture(0, 0.0);
  return fx;
}

const pipeline::PipelineResult& reference_run() {
  static const auto r = pipeline::run_pipeline(fixture().frontal, fixture().profile, {});
  return r;
}

// Adaptation of the generic model through `count` controls, as in the bench table.
void adapt(benchmark::State& state, pipeline::DeformMethod method) {
  const auto model = mesh::build_generic_model();
  const auto ids = pipeline::subsample_ids(static_cast<int>(state.range(0)));
  std::vector<Eigen::Vector3d> sources, targets;
  for (const int id : ids) {
    sources.push_back(model.vertices[static_cast<std::size_t>(model.control_map[static_cast<std::size_t>(id)])]);
    targets.push_back(reference_run().targets[static_cast<std::size_t>(id)]);
  }
  for (auto _ : state) {
    const auto fit = mesh::procrustes_align(sources, targets);
    auto vertices = mesh::apply_transform(fit.transform, model.vertices);
    if (method == pipeline::DeformMethod::Dffd) {
      const mesh::DeformField field(mesh::apply_transform(fit.transform, sources), targets);
      vertices = field.apply(vertices);
    }
    benchmark::DoNotOptimize(vertices.data());
  }
}

void BM_AdaptProcrustes(benchmark::State& state) { adapt(state, pipeline::DeformMethod::Procrustes); }
void BM_AdaptDffd(benchmark::State& state) { adapt(state, pipeline::DeformMethod::Dffd); }

void BM_Pipeline(benchmark::State& state) {
  for (auto _ : state) {
    auto r = pipeline::run_pipeline(fixture().frontal, fixture().profile, {});
    benchmark::DoNotOptimize(r.vertices.data());
  }
}

void BM_Scda(benchmark::State& state) {
  const auto points = scda::micro_features(reference_run().chroma_mask);
  for (auto _ : state) {
    auto res = scda::scda_cluster(points, {});
    benchmark::DoNotOptimize(res.clusters.data());
  }
  state.counters["points"] = static_cast<double>(points.size());
}

void BM_Canny(benchmark::State& state) {
  const Raster luma = reference_run().frontal_luma;
  for (auto _ : state) {
    auto edges = imgproc::canny_edges(luma, 20, 40);
    benchmark::DoNotOptimize(edges.data().data());
  }
}

void BM_Delaunay(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < state.range(0); ++i) pts.emplace_back(u(rng), u(rng));
  for (auto _ : state) {
    auto faces = mesh::delaunay_triangulate(pts);
    benchmark::DoNotOptimize(faces.data());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_AdaptProcrustes)->Arg(29)->Arg(45)->Arg(60)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AdaptDffd)->Arg(29)->Arg(45)->Arg(60)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scda)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Canny)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Delaunay)->RangeMultiplier(2)->Range(16, 512)->Complexity()->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
