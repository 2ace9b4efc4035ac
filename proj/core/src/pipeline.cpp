#include <algorithm>
#include <chrono>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "orthoface/imgproc.hpp"
#include "orthoface/pipeline.hpp"
#include "orthoface/pnm.hpp"

namespace orthoface::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <typename F>
void timed(FitReport& report, const char* name, F&& body) {
  const auto start = Clock::now();
  try {
    body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.kind(), e.what());
  }
  report.stages.push_back({name, elapsed_ms(start)});
}

RegionOfInterest edge_bounds(const Raster& edges, int margin) {
  RegionOfInterest box{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), -1, -1};
  for (int y = 0; y < edges.height(); ++y) {
    for (int x = 0; x < edges.width(); ++x) {
      if (!edges.is_set(x, y)) continue;
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) throw features::ExtractionError(features::FeatureWindow::Outline, "no edges in the frontal view");
  return RegionOfInterest{box.x0 - margin, box.y0 - margin, box.x1 + margin, box.y1 + margin}
      .clipped(edges.width(), edges.height());
}

}  // namespace

Raster chroma_mask(const Raster& cr, const PipelineConfig& config) {
  const auto threshold = config.chroma_threshold < 0
                             ? imgproc::Threshold::otsu()
                             : imgproc::Threshold::fixed(config.chroma_threshold);
  const auto bin = imgproc::binarize(cr, threshold, config.polarity);
  if (bin.degenerate) throw InvalidInputError("chroma plane is constant");
  const Raster opened = imgproc::morph(bin.mask, StructuringElement::square(config.open_size),
                                       imgproc::MorphMode::Open);
  return imgproc::morph(opened, StructuringElement::square(config.close_size),
                        imgproc::MorphMode::Close);
}

mesh::GenericModel model_for(const PipelineConfig& config) {
  return config.model_path.empty() ? mesh::build_generic_model()
                                   : mesh::load_generic_model(config.model_path);
}

std::vector<Eigen::Vector3d> pre_transform(const depth::Reconstruction& rec,
                                           const std::vector<features::Landmark2D>& frontal,
                                           double* interocular_px) {
  Eigen::Vector3d left = Eigen::Vector3d::Zero(), right = Eigen::Vector3d::Zero();
  int nl = 0, nr = 0;
  for (const auto& l : frontal) {
    const auto& p = rec.landmarks.at(static_cast<std::size_t>(l.id));
    const Eigen::Vector3d v(p.x, p.y, p.z);
    if (l.window == features::FeatureWindow::LeftEye) {
      left += v;
      ++nl;
    } else if (l.window == features::FeatureWindow::RightEye) {
      right += v;
      ++nr;
    }
  }
  if (nl == 0 || nr == 0) throw InvalidInputError("both eyes need landmarks");
  const double d = (right / nr - left / nl).norm();
  if (!(d > 0.0)) throw InvalidInputError("eye centers coincide");
  if (interocular_px != nullptr) *interocular_px = d;

  const auto& o = rec.origin;
  std::vector<Eigen::Vector3d> out;
  out.reserve(rec.landmarks.size());
  for (const auto& p : rec.landmarks) {
    out.emplace_back((p.x - o.x) / d, -(p.y - o.y) / d, (p.z - o.z) / d);
  }
  return out;
}

PipelineResult run_pipeline(const Raster& frontal, const Raster& profile,
                            const PipelineConfig& config) {
  config.validate();
  const auto run_start = Clock::now();
  PipelineResult r;
  FitReport& rep = r.report;
  rep.method = config.method;
  rep.config_hash = config_hash(config);

  Raster ycc;
  timed(rep, "preprocess", [&] {
    if (frontal.planes() != 3 || frontal.semantics() != PlaneSemantics::RGB) {
      throw InvalidInputError("frontal view must be an RGB image");
    }
    if (profile.planes() != 1) throw InvalidInputError("profile view must be a gray image");
    ycc = imgproc::rgb_to_ycbcr(frontal);
    Raster luma = ycc.plane(0);
    Raster side = profile.with_semantics(PlaneSemantics::Gray);
    if (config.equalize) {
      auto eq = imgproc::equalize_jointly(luma, side);
      luma = std::move(eq.first);
      side = std::move(eq.second);
    }
    r.frontal_luma = std::move(luma);
    r.profile_luma = std::move(side);
  });

  Raster cb, cr;
  timed(rep, "edges", [&] {
    r.edges = imgproc::canny_edges(r.frontal_luma, config.canny_low, config.canny_high);
    r.face_roi = edge_bounds(r.edges, config.face_margin);
    cb = ycc.plane(1);
    cr = ycc.plane(2);
    if (config.scale_target > 0 && r.face_roi.height() != config.scale_target) {
      const auto scaled = imgproc::normalize_scale(r.frontal_luma, config.scale_target, r.face_roi);
      r.scale = scaled.scale;
      r.frontal_luma = scaled.image;
      r.profile_luma = imgproc::resample_bilinear(r.profile_luma, r.scale);
      cb = imgproc::resample_bilinear(cb, r.scale);
      cr = imgproc::resample_bilinear(cr, r.scale);
      r.edges = imgproc::canny_edges(r.frontal_luma, config.canny_low, config.canny_high);
      r.face_roi = edge_bounds(r.edges, config.face_margin);
    }
  });

  timed(rep, "chroma", [&] {
    r.chroma_mask = chroma_mask(cr, config);
  });

  timed(rep, "scda", [&] {
    r.clusters = scda::scda_cluster(scda::micro_features(r.chroma_mask), config.scda);
  });

  timed(rep, "windows", [&] {
    r.windows = scda::assign_feature_windows(r.clusters.clusters, r.face_roi, cb, config.windows);
  });

  timed(rep, "landmarks", [&] {
    r.frontal = features::assemble_frontal_set(r.windows, r.edges,
                                               features::LandmarkQuota(config.quota), r.face_roi);
    rep.frontal_landmarks = static_cast<int>(r.frontal.size());
  });

  timed(rep, "soic", [&] {
    std::vector<features::Landmark2D> visible;
    for (const auto& l : r.frontal) {
      if (config.sides.is_visible(l.id)) visible.push_back(l);
    }
    r.soic = depth::soic_match(r.frontal_luma, r.profile_luma, visible, config.soic);
    rep.profile_matches = static_cast<int>(r.soic.matches.size());
  });

  timed(rep, "symmetry", [&] {
    r.reconstruction = depth::build_3d_set(r.frontal, r.soic.matches, config.sides);
    for (const auto& l : r.reconstruction.landmarks) {
      if (l.side == depth::Side::Hidden) ++rep.hidden_landmarks;
      if (l.clamped) rep.clamped_ids.push_back(l.id);
    }
  });

  mesh::GenericModel model;
  timed(rep, "pretransform", [&] {
    model = model_for(config);
    r.targets = pre_transform(r.reconstruction, r.frontal);
    Eigen::Vector3d left = Eigen::Vector3d::Zero(), right = Eigen::Vector3d::Zero();
    int nl = 0, nr = 0;
    for (const auto& l : r.frontal) {
      if (l.window == features::FeatureWindow::LeftEye) {
        left += r.targets[static_cast<std::size_t>(l.id)];
        ++nl;
      } else if (l.window == features::FeatureWindow::RightEye) {
        right += r.targets[static_cast<std::size_t>(l.id)];
        ++nr;
      }
    }
    r.interocular = (right / nr - left / nl).norm();
  });

  std::vector<Eigen::Vector3d> controls;
  timed(rep, "align", [&] {
    for (const int v : model.control_map) controls.push_back(model.vertices[static_cast<std::size_t>(v)]);
    const auto fit = mesh::procrustes_align(controls, r.targets);
    r.alignment = fit.transform;
    r.vertices = mesh::apply_transform(fit.transform, model.vertices);
    controls = mesh::apply_transform(fit.transform, controls);
    rep.procrustes_mse = mesh::fit_mse(controls, r.targets, r.interocular);
    rep.normalized_mse = rep.procrustes_mse;
  });

  if (config.method == DeformMethod::Dffd) {
    timed(rep, "deform", [&] {
      const mesh::DeformField field(controls, r.targets);
      r.vertices = field.apply(r.vertices);
      std::vector<Eigen::Vector3d> moved;
      for (const int v : model.control_map) moved.push_back(r.vertices[static_cast<std::size_t>(v)]);
      rep.normalized_mse = mesh::fit_mse(moved, r.targets, r.interocular);
    });
  }
  r.faces = model.faces;
  rep.total_ms = elapsed_ms(run_start);
  return r;
}

PipelineResult run_pipeline_files(const std::string& frontal_path, const std::string& profile_path,
                                  const PipelineConfig& config) {
  config.validate();
  const Raster frontal = pnm::read(frontal_path);
  const Raster profile = pnm::read(profile_path);
  return run_pipeline(frontal, profile, config);
}

std::string report_to_json(const FitReport& rep) {
  std::string out = "{\n  \"stages\": [\n";
  for (std::size_t i = 0; i < rep.stages.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "    {{\"stage\": \"{}\", \"ms\": {:.3f}}}{}\n",
                   rep.stages[i].stage, rep.stages[i].ms, i + 1 < rep.stages.size() ? "," : "");
  }
  fmt::format_to(std::back_inserter(out),
                 "  ],\n  \"total_ms\": {:.3f},\n  \"frontal_landmarks\": {},\n"
                 "  \"profile_matches\": {},\n  \"hidden_landmarks\": {},\n  \"method\": \"{}\",\n"
                 "  \"procrustes_mse\": {:.9e},\n  \"normalized_mse\": {:.9e},\n"
                 "  \"clamped_ids\": [{}],\n  \"config_hash\": \"{:016x}\"\n}}\n",
                 rep.total_ms, rep.frontal_landmarks, rep.profile_matches, rep.hidden_landmarks,
                 to_string(rep.method), rep.procrustes_mse, rep.normalized_mse,
                 fmt::join(rep.clamped_ids, ", "), rep.config_hash);
  return out;
}

}  // namespace orthoface::pipeline
