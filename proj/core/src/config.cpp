#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "orthoface/config.hpp"

namespace orthoface::pipeline {

const char* to_string(DeformMethod m) noexcept {
  return m == DeformMethod::Procrustes ? "procrustes" : "dffd";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  std::optional<Entry> take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    Entry e = it->second;
    entries_.erase(it);
    return e;
  }

  void finish() const {
    if (!entries_.empty()) {
      const auto& [key, e] = *entries_.begin();
      throw ConfigError(fmt::format("line {}: unknown key '{}'", e.line, key));
    }
  }

 private:
  std::map<std::string, Entry> entries_;
};

[[noreturn]] void bad(const std::string& key, const Entry& e, const char* what) {
  throw ConfigError(fmt::format("line {}: {} must be {}, got '{}'", e.line, key, what, e.value));
}

int as_int(const std::string& key, const Entry& e) {
  int v = 0;
  const auto* end = e.value.data() + e.value.size();
  const auto r = std::from_chars(e.value.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end) bad(key, e, "an integer");
  return v;
}

double as_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  const auto* end = e.value.data() + e.value.size();
  const auto r = std::from_chars(e.value.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(v)) bad(key, e, "a finite number");
  return v;
}

bool as_bool(const std::string& key, const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  bad(key, e, "true or false");
}

std::string as_string(const std::string& key, const Entry& e) {
  if (e.value.size() < 2 || e.value.front() != '"' || e.value.back() != '"') {
    bad(key, e, "a quoted string");
  }
  const std::string inner = e.value.substr(1, e.value.size() - 2);
  if (inner.find('"') != std::string::npos) bad(key, e, "a quoted string");
  return inner;
}

std::vector<int> as_int_list(const std::string& key, const Entry& e) {
  if (e.value.size() < 2 || e.value.front() != '[' || e.value.back() != ']') {
    bad(key, e, "an integer array");
  }
  std::vector<int> out;
  const std::string inner = trim(std::string_view(e.value).substr(1, e.value.size() - 2));
  if (inner.empty()) return out;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(as_int(key, {trim(item), e.line}));
  if (inner.back() == ',') bad(key, e, "an integer array");
  return out;
}

std::vector<std::pair<int, int>> as_pair_list(const std::string& key, const Entry& e) {
  std::string flat;
  int depth = 0;
  std::vector<int> nums;
  for (const char c : e.value) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (depth < 0 || depth > 2) bad(key, e, "an array of [hidden, visible] pairs");
    flat += (c == '[' || c == ']') ? ' ' : c;
  }
  if (depth != 0 || e.value.empty() || e.value.front() != '[') {
    bad(key, e, "an array of [hidden, visible] pairs");
  }
  std::stringstream ss(flat);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    nums.push_back(as_int(key, {t, e.line}));
  }
  if (nums.size() % 2 != 0) bad(key, e, "an array of [hidden, visible] pairs");
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < nums.size(); i += 2) out.emplace_back(nums[i], nums[i + 1]);
  return out;
}

std::map<std::string, Entry> tokenize(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    bool quoted = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    const std::string s = trim(std::string_view(raw).substr(0, cut));
    if (s.empty()) continue;
    if (s.front() == '[' && s.find('=') == std::string::npos) {
      if (s.back() != ']') throw ConfigError(fmt::format("line {}: malformed section header", line));
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", line));
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(fmt::format("line {}: expected key = value", line));
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (!entries.emplace(full, Entry{value, line}).second) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line, full));
    }
  }
  return entries;
}

template <typename F>
void check(const char* what, F&& f) {
  try {
    f();
  } catch (const InvalidInputError& e) {
    throw ConfigError(fmt::format("{}: {}", what, e.what()));
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (scale_target != 0 && scale_target < 8) {
    throw ConfigError("preprocess.scale_target must be 0 or at least 8");
  }
  if (face_margin < 0) throw ConfigError("preprocess.face_margin must be non-negative");
  if (chroma_threshold < -1 || chroma_threshold > 255) {
    throw ConfigError("chroma.threshold must be \"otsu\" or an integer in [0,255]");
  }
  for (const int s : {open_size, close_size}) {
    if (s < 1 || s % 2 == 0) throw ConfigError("chroma structuring element sizes must be odd and >= 1");
  }
  check("scda", [&] { scda.validate(); });
  check("windows", [&] { windows.validate(); });
  if (!(canny_low >= 0.0 && canny_low < canny_high && canny_high <= 255.0)) {
    throw ConfigError("edges thresholds need 0 <= low < high <= 255");
  }
  check("landmarks.quota", [&] { features::LandmarkQuota q(quota); });
  check("soic", [&] { soic.validate(); });
  check("sides", [&] { sides.validate(); });
}

PipelineConfig parse_config(const std::string& text) {
  Reader r(tokenize(text));
  PipelineConfig c;
  auto get = [&](const char* key, auto&& assign) {
    if (auto e = r.take(key)) assign(std::string(key), *e);
  };

  get("preprocess.equalize", [&](const auto& k, const auto& e) { c.equalize = as_bool(k, e); });
  get("preprocess.scale_target", [&](const auto& k, const auto& e) { c.scale_target = as_int(k, e); });
  get("preprocess.face_margin", [&](const auto& k, const auto& e) { c.face_margin = as_int(k, e); });

  get("chroma.threshold", [&](const auto& k, const auto& e) {
    c.chroma_threshold = e.value == "\"otsu\"" ? -1 : as_int(k, e);
    if (c.chroma_threshold < 0 && e.value != "\"otsu\"") bad(k, e, "\"otsu\" or an integer in [0,255]");
  });
  get("chroma.polarity", [&](const auto& k, const auto& e) {
    const std::string p = as_string(k, e);
    if (p == "bright") c.polarity = imgproc::Polarity::Bright;
    else if (p == "dark") c.polarity = imgproc::Polarity::Dark;
    else bad(k, e, "\"bright\" or \"dark\"");
  });
  get("chroma.open_size", [&](const auto& k, const auto& e) { c.open_size = as_int(k, e); });
  get("chroma.close_size", [&](const auto& k, const auto& e) { c.close_size = as_int(k, e); });

  get("scda.radius", [&](const auto& k, const auto& e) { c.scda.radius = as_double(k, e); });
  get("scda.alpha", [&](const auto& k, const auto& e) { c.scda.alpha = as_int(k, e); });

  get("windows.eye_band", [&](const auto& k, const auto& e) { c.windows.eye_band = as_double(k, e); });
  get("windows.eye_row_tolerance",
      [&](const auto& k, const auto& e) { c.windows.eye_row_tolerance = as_double(k, e); });
  get("windows.eye_candidates", [&](const auto& k, const auto& e) { c.windows.eye_candidates = as_int(k, e); });
  get("windows.nose_top", [&](const auto& k, const auto& e) { c.windows.nose_top = as_double(k, e); });
  get("windows.nose_bottom", [&](const auto& k, const auto& e) { c.windows.nose_bottom = as_double(k, e); });
  get("windows.mouth_top", [&](const auto& k, const auto& e) { c.windows.mouth_top = as_double(k, e); });
  get("windows.mouth_bottom", [&](const auto& k, const auto& e) { c.windows.mouth_bottom = as_double(k, e); });
  get("windows.padding", [&](const auto& k, const auto& e) { c.windows.padding = as_double(k, e); });

  get("edges.low", [&](const auto& k, const auto& e) { c.canny_low = as_double(k, e); });
  get("edges.high", [&](const auto& k, const auto& e) { c.canny_high = as_double(k, e); });

  get("landmarks.quota", [&](const auto& k, const auto& e) {
    const auto q = as_int_list(k, e);
    if (q.size() != 5) bad(k, e, "five counts (left eye, right eye, nose, mouth, outline)");
    std::copy(q.begin(), q.end(), c.quota.begin());
  });

  get("soic.d_init", [&](const auto& k, const auto& e) { c.soic.d_init = as_int(k, e); });
  get("soic.d_step", [&](const auto& k, const auto& e) { c.soic.d_step = as_int(k, e); });
  get("soic.d_max", [&](const auto& k, const auto& e) { c.soic.d_max = as_int(k, e); });
  get("soic.z_min", [&](const auto& k, const auto& e) { c.soic.z_min = as_int(k, e); });
  get("soic.z_max", [&](const auto& k, const auto& e) { c.soic.z_max = as_int(k, e); });

  get("sides.visible", [&](const auto& k, const auto& e) { c.sides.visible_ids = as_int_list(k, e); });
  get("sides.midline", [&](const auto& k, const auto& e) { c.sides.midline_ids = as_int_list(k, e); });
  get("sides.mirror", [&](const auto& k, const auto& e) { c.sides.mirror_pairs = as_pair_list(k, e); });

  get("deform.method", [&](const auto& k, const auto& e) {
    const std::string m = as_string(k, e);
    if (m == "dffd") c.method = DeformMethod::Dffd;
    else if (m == "procrustes") c.method = DeformMethod::Procrustes;
    else bad(k, e, "\"dffd\" or \"procrustes\"");
  });
  get("deform.model", [&](const auto& k, const auto& e) { c.model_path = as_string(k, e); });

  r.finish();
  c.validate();
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::string join(const std::vector<int>& v) {
  return fmt::format("[{}]", fmt::join(v, ", "));
}

struct Writer {
  std::string out;

  template <typename... T>
  void operator()(fmt::format_string<T...> f, T&&... args) {
    fmt::format_to(std::back_inserter(out), f, std::forward<T>(args)...);
  }
};

}  // namespace

std::string to_text(const PipelineConfig& c) {
  Writer put;
  put("[preprocess]\nequalize = {}\nscale_target = {}\nface_margin = {}\n\n", c.equalize,
      c.scale_target, c.face_margin);
  put("[chroma]\n");
  if (c.chroma_threshold < 0) put("threshold = \"otsu\"\n");
  else put("threshold = {}\n", c.chroma_threshold);
  put("polarity = \"{}\"\nopen_size = {}\nclose_size = {}\n\n",
      c.polarity == imgproc::Polarity::Bright ? "bright" : "dark", c.open_size, c.close_size);
  put("[scda]\nradius = {}\nalpha = {}\n\n", c.scda.radius, c.scda.alpha);
  const auto& w = c.windows;
  put("[windows]\neye_band = {}\neye_row_tolerance = {}\neye_candidates = {}\n", w.eye_band,
      w.eye_row_tolerance, w.eye_candidates);
  put("nose_top = {}\nnose_bottom = {}\nmouth_top = {}\nmouth_bottom = {}\npadding = {}\n\n",
      w.nose_top, w.nose_bottom, w.mouth_top, w.mouth_bottom, w.padding);
  put("[edges]\nlow = {}\nhigh = {}\n\n", c.canny_low, c.canny_high);
  put("[landmarks]\nquota = {}\n\n", join({c.quota.begin(), c.quota.end()}));
  put("[soic]\nd_init = {}\nd_step = {}\nd_max = {}\n", c.soic.d_init, c.soic.d_step,
      c.soic.d_max);
  if (c.soic.z_min) put("z_min = {}\n", *c.soic.z_min);
  if (c.soic.z_max) put("z_max = {}\n", *c.soic.z_max);
  put("\n[sides]\nvisible = {}\nmidline = {}\nmirror = [", join(c.sides.visible_ids),
      join(c.sides.midline_ids));
  for (std::size_t i = 0; i < c.sides.mirror_pairs.size(); ++i) {
    put("{}[{}, {}]", i ? ", " : "", c.sides.mirror_pairs[i].first, c.sides.mirror_pairs[i].second);
  }
  put("]\n\n[deform]\nmethod = \"{}\"\n", to_string(c.method));
  if (!c.model_path.empty()) put("model = \"{}\"\n", c.model_path);
  return put.out;
}

std::uint64_t config_hash(const PipelineConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : to_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace orthoface::pipeline
