#pragma once

#include <string>
#include <vector>

#include "orthoface/depth.hpp"
#include "orthoface/features.hpp"
#include "orthoface/scda.hpp"

namespace orthoface::io {

/// JSON text with six-decimal coordinates; identical input gives identical bytes.
std::string landmarks_to_json(const std::vector<features::Landmark2D>& landmarks);
std::string landmarks_to_json(const std::vector<depth::Landmark3D>& landmarks);
std::string clusters_to_json(const scda::ScdaResult& result);
std::string windows_to_json(const scda::FeatureWindows& windows);

std::vector<depth::Landmark3D> landmarks3d_from_json(const std::string& text);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace orthoface::io
