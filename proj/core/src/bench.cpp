#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "orthoface/fixture.hpp"
#include "orthoface/pipeline.hpp"

namespace orthoface::pipeline {

std::vector<int> subsample_ids(int count) {
  if (count < 4 || count > features::kFrontalLandmarks) {
    throw InvalidInputError(fmt::format("control count {} outside [4, {}]", count,
                                        features::kFrontalLandmarks));
  }
  std::vector<int> ids;
  for (int k = 0; k < count; ++k) ids.push_back(k * features::kFrontalLandmarks / count);
  return ids;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.seeds.empty()) throw InvalidInputError("bench needs at least one seed");
  for (const int c : options.counts) subsample_ids(c);

  PipelineConfig config = options.config;
  config.method = DeformMethod::Procrustes;
  const mesh::GenericModel model = model_for(config);

  struct Sample {
    std::vector<double> mse;
    std::vector<double> ms;
  };
  const DeformMethod methods[] = {DeformMethod::Procrustes, DeformMethod::Dffd};
  std::vector<Sample> samples(options.counts.size() * 2);

  for (const auto seed : options.seeds) {
    const auto fx = synth_fixture(seed, options.noise);
    const auto run = run_pipeline(fx.frontal, fx.profile, config);
    for (std::size_t ci = 0; ci < options.counts.size(); ++ci) {
      const auto ids = subsample_ids(options.counts[ci]);
      std::vector<Eigen::Vector3d> sources, targets;
      for (const int id : ids) {
        sources.push_back(model.vertices[static_cast<std::size_t>(model.control_map[static_cast<std::size_t>(id)])]);
        targets.push_back(run.targets[static_cast<std::size_t>(id)]);
      }
      for (std::size_t mi = 0; mi < 2; ++mi) {
        const auto start = std::chrono::steady_clock::now();
        const auto fit = mesh::procrustes_align(sources, targets);
        auto vertices = mesh::apply_transform(fit.transform, model.vertices);
        auto moved = mesh::apply_transform(fit.transform, sources);
        if (methods[mi] == DeformMethod::Dffd) {
          const mesh::DeformField field(moved, targets);
          vertices = field.apply(vertices);
          moved = field.apply(moved);
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        auto& s = samples[ci * 2 + mi];
        s.mse.push_back(mesh::fit_mse(moved, targets, run.interocular));
        s.ms.push_back(options.timing ? ms : 0.0);
      }
    }
  }

  std::vector<BenchRow> rows;
  for (std::size_t ci = 0; ci < options.counts.size(); ++ci) {
    for (std::size_t mi = 0; mi < 2; ++mi) {
      const auto& s = samples[ci * 2 + mi];
      const double n = static_cast<double>(s.mse.size());
      double mean = 0.0, ms = 0.0;
      for (std::size_t i = 0; i < s.mse.size(); ++i) {
        mean += s.mse[i];
        ms += s.ms[i];
      }
      mean /= n;
      double var = 0.0;
      for (const double v : s.mse) var += (v - mean) * (v - mean);
      const double sd = s.mse.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
      rows.push_back({options.counts[ci], methods[mi], mean, sd, ms / n});
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "count,method,mse_mean,mse_std,time_ms_mean\n";
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{:.9e},{:.9e},{:.6f}\n", r.count,
                   to_string(r.method), r.mse_mean, r.mse_std, r.time_ms_mean);
  }
  return out;
}

}  // namespace orthoface::pipeline
