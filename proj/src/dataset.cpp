#include "coin/dataset.hpp"

#include "coin/errors.hpp"
#include "coin/features.hpp"
#include "coin/imaging.hpp"
#include "coin/pgm.hpp"
#include "coin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace coin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::array<double, 3> kRingRadiusFracs = {0.45, 0.65, 0.85};

std::string base_id_of(int class_index, int sample_index) {
  return "c" + std::to_string(class_index) + "_s" + std::to_string(sample_index);
}

// Smallest absolute angular distance between two directions, in radians.
double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace

std::array<ClassGlyph, kClassCount> SyntheticCoinSpec::default_glyphs() {
  std::array<ClassGlyph, kClassCount> glyphs;
  for (int k = 0; k < kClassCount; ++k) {
    ClassGlyph& g = glyphs[k];
    const int denomination = std::min(k / 4, 3);
    g.disc_radius_frac = 0.33 + 0.03 * denomination;
    g.disc_intensity = 110 + 9 * k;
    g.ring_count = 1 + k % 3;
    g.spoke_count = 3 + k % 5;
    g.ring_intensity = g.disc_intensity - 55;
    g.spoke_intensity = g.disc_intensity > 195 ? g.disc_intensity - 65 : g.disc_intensity + 60;
  }
  return glyphs;
}

GrayImage render_base_coin(const SyntheticCoinSpec& spec, int class_index, int sample_index) {
  if (class_index < 0 || class_index >= kClassCount) {
    throw Error("render_base_coin: class index out of range");
  }
  const ClassGlyph& glyph = spec.glyphs[static_cast<std::size_t>(class_index)];
  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(class_index),
                      static_cast<std::uint64_t>(sample_index)));

  const double cx = static_cast<double>(spec.side - 1) / 2.0 +
                    rng.uniform_int(-spec.center_offset, spec.center_offset);
  const double cy = static_cast<double>(spec.side - 1) / 2.0 +
                    rng.uniform_int(-spec.center_offset, spec.center_offset);
  const double disc_r = glyph.disc_radius_frac * spec.side;
  const double ring_half = std::max(2.0, 0.025 * disc_r);
  const double spoke_half_angle = 0.06;  // radians; ~4 px arc mid-disc

  GrayImage img = make_gray(spec.side, spec.side);
  for (Index y = 0; y < spec.side; ++y) {
    for (Index x = 0; x < spec.side; ++x) {
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (dist > disc_r) continue;

      int value = glyph.disc_intensity;
      for (int i = 0; i < glyph.ring_count; ++i) {
        if (std::abs(dist - kRingRadiusFracs[i] * disc_r) <= ring_half) {
          value = glyph.ring_intensity;
        }
      }
      if (dist >= 0.30 * disc_r && dist <= 0.80 * disc_r) {
        const double phi = std::atan2(dy, dx);
        for (int s = 0; s < glyph.spoke_count; ++s) {
          const double spoke_dir = 2.0 * kPi * s / glyph.spoke_count;
          // Spoke 0 is double-width, breaking all rotational symmetry.
          const double half = s == 0 ? 2.0 * spoke_half_angle : spoke_half_angle;
          if (angular_distance(phi, spoke_dir) <= half) {
            value = glyph.spoke_intensity;
          }
        }
      }
      if (spec.noise_amplitude > 0) {
        value += rng.uniform_int(-spec.noise_amplitude, spec.noise_amplitude);
      }
      img(y, x) = static_cast<std::uint8_t>(std::clamp(value, 0, 255));
    }
  }
  return img;
}

std::vector<LabeledImage> generate_synthetic_corpus(const SyntheticCoinSpec& spec) {
  std::vector<LabeledImage> bases;
  bases.reserve(static_cast<std::size_t>(kClassCount) * spec.samples_per_class);
  for (int k = 0; k < kClassCount; ++k) {
    for (int s = 0; s < spec.samples_per_class; ++s) {
      bases.push_back({render_base_coin(spec, k, s), k, base_id_of(k, s), 0});
    }
  }
  return bases;
}

GrayImage trim_to_coin(const GrayImage& raw, const HoughParams& params,
                       std::optional<double> sobel_threshold) {
  const CircleHypothesis circle = detect_coin(raw, params, sobel_threshold);
  return resize(crop_to_circle(raw, circle), kCoinSide, kCoinSide);
}

std::vector<LabeledImage> augment_rotations(const LabeledImage& base, int step_degrees,
                                            bool include_original) {
  if (step_degrees < 1 || 360 % step_degrees != 0) {
    throw BadStep("augment_rotations: step must divide 360");
  }
  std::vector<LabeledImage> rotated;
  rotated.reserve(static_cast<std::size_t>(360 / step_degrees));
  for (int angle = include_original ? 0 : step_degrees; angle < 360; angle += step_degrees) {
    rotated.push_back({angle == 0 ? base.image : rotate(base.image, angle), base.label,
                       base.base_id, angle});
  }
  return rotated;
}

SplitIndices split_indices(std::size_t count, double train_frac, double val_frac,
                           std::uint64_t seed) {
  if (count == 0) throw EmptyDataset("split: no samples");
  if (train_frac < 0.0 || val_frac < 0.0 || train_frac + val_frac > 1.0) {
    throw Error("split: fractions must be non-negative and sum to at most 1");
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  const auto n_train = static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(count)));
  const auto n_val = static_cast<std::size_t>(std::floor(val_frac * static_cast<double>(count)));
  SplitIndices idx;
  idx.train.assign(order.begin(), order.begin() + n_train);
  idx.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  idx.test.assign(order.begin() + n_train + n_val, order.end());
  return idx;
}

SplitDataset split(const std::vector<LabeledImage>& samples, double train_frac, double val_frac,
                   std::uint64_t seed) {
  const SplitIndices idx = split_indices(samples.size(), train_frac, val_frac, seed);
  SplitDataset out;
  out.seed = seed;
  for (const auto i : idx.train) out.train.push_back(samples[i]);
  for (const auto i : idx.validation) out.validation.push_back(samples[i]);
  for (const auto i : idx.test) out.test.push_back(samples[i]);
  return out;
}

std::vector<LabeledImage> build_full_dataset(const SyntheticCoinSpec& spec, int step_degrees) {
  const HoughParams params = default_hough_params(spec.side, spec.side);
  std::vector<LabeledImage> dataset;
  for (const LabeledImage& base : generate_synthetic_corpus(spec)) {
    GrayImage trimmed;
    try {
      trimmed = trim_to_coin(base.image, params);
    } catch (const NoCircleFound&) {
      throw NoCircleFound("build_full_dataset: no circle in base image " + base.base_id);
    }
    for (auto& rot : augment_rotations({std::move(trimmed), base.label, base.base_id, 0},
                                       step_degrees)) {
      dataset.push_back(std::move(rot));
    }
  }
  return dataset;
}

std::filesystem::path write_corpus(const std::vector<LabeledImage>& images,
                                   const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());

  const std::filesystem::path manifest_path = out_dir / "manifest.tsv";
  std::ofstream manifest(manifest_path);
  if (!manifest) throw IoError("cannot write " + manifest_path.string());

  for (const LabeledImage& img : images) {
    const auto sample_pos = img.base_id.rfind("_s");
    const std::string sample_id =
        sample_pos == std::string::npos ? img.base_id : img.base_id.substr(sample_pos + 2);
    const std::string rel = std::to_string(img.label) + "/" + sample_id + "_" +
                            std::to_string(img.angle) + ".pgm";
    std::filesystem::create_directories(out_dir / std::to_string(img.label), ec);
    if (ec) throw IoError("cannot create class directory under " + out_dir.string());
    write_pgm(img.image, out_dir / rel);
    manifest << rel << '\t' << img.label << '\t' << rupee_value(denomination_of(img.label))
             << '\t' << img.angle << '\n';
  }
  manifest.flush();
  if (!manifest) throw IoError("write failed for " + manifest_path.string());
  return manifest_path;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path) {
  if (!std::filesystem::exists(manifest_path)) {
    throw FileNotFound("no such manifest: " + manifest_path.string());
  }
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open " + manifest_path.string());

  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    ManifestEntry entry;
    std::string path_field;
    if (!std::getline(fields, path_field, '\t') ||
        !(fields >> entry.label >> entry.rupee_value >> entry.angle)) {
      throw ManifestError("malformed manifest line " + std::to_string(line_no) + " in " +
                          manifest_path.string());
    }
    if (entry.label < 0 || entry.label >= kClassCount) {
      throw ManifestError("class index out of range at manifest line " + std::to_string(line_no));
    }
    entry.path = path_field;
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<Sample> load_samples(const std::filesystem::path& manifest_path,
                                 const std::vector<ManifestEntry>& entries, bool normalize) {
  const std::filesystem::path root = manifest_path.parent_path();
  std::vector<Sample> samples;
  samples.reserve(entries.size());
  for (const ManifestEntry& entry : entries) {
    samples.push_back({featurize(read_pgm(root / entry.path), normalize), entry.label});
  }
  return samples;
}

}  // namespace coin
