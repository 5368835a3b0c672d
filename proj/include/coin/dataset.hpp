#pragma once

#include "coin/classifier.hpp"
#include "coin/hough.hpp"
#include "coin/raster.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace coin {

struct LabeledImage {
  GrayImage image;
  int label = 0;
  std::string base_id;  // "c<class>_s<sample>"
  int angle = 0;        // degrees, one of {0, step, ..., 360-step}
};

struct SplitDataset {
  std::vector<LabeledImage> train, validation, test;
  std::uint64_t seed = 0;
};

struct SplitIndices {
  std::vector<std::size_t> train, validation, test;
};

/// Visual parameters of one synthetic coin face: a disc carrying concentric
/// rings and radial spokes. One spoke is double-width so no rotation maps
/// the glyph onto itself. Radii are fractions of the image side.
struct ClassGlyph {
  double disc_radius_frac = 0.35;
  int ring_count = 1;
  int spoke_count = 3;
  int disc_intensity = 150;
  int ring_intensity = 90;
  int spoke_intensity = 210;
};

struct SyntheticCoinSpec {
  int side = 200;
  int samples_per_class = 5;
  int noise_amplitude = 10;  // per-pixel intensity jitter inside the disc
  int center_offset = 4;     // per-sample center shift range, each axis
  std::uint64_t seed = 1;
  std::array<ClassGlyph, kClassCount> glyphs = default_glyphs();

  static std::array<ClassGlyph, kClassCount> default_glyphs();
};

/// One deterministic base face; jitter derives from (seed, class, sample).
GrayImage render_base_coin(const SyntheticCoinSpec& spec, int class_index, int sample_index);

/// The 14 x samples_per_class base faces, ordered by class then sample.
std::vector<LabeledImage> generate_synthetic_corpus(const SyntheticCoinSpec& spec);

/// Grayscale -> Sobel -> Hough -> circular crop -> 100x100 trim.
GrayImage trim_to_coin(const GrayImage& raw, const HoughParams& params,
                       std::optional<double> sobel_threshold = std::nullopt);

/// One copy per angle in {0, step, ..., 360-step}, all with base's label.
/// Pass include_original=false to start at `step` instead of 0. Throws
/// BadStep unless step divides 360.
std::vector<LabeledImage> augment_rotations(const LabeledImage& base, int step_degrees,
                                            bool include_original = true);

/// Seeded shuffle then contiguous partition: floor(train_frac*N),
/// floor(val_frac*N), remainder.
SplitIndices split_indices(std::size_t count, double train_frac, double val_frac,
                           std::uint64_t seed);
SplitDataset split(const std::vector<LabeledImage>& samples, double train_frac, double val_frac,
                   std::uint64_t seed);

/// Full corpus: base faces, preprocessing to 100x100, then all rotations.
/// Defaults yield 5040 images (1440 per rupee-1/2/5, 720 for rupee-10),
/// ordered by class, sample, angle.
std::vector<LabeledImage> build_full_dataset(const SyntheticCoinSpec& spec, int step_degrees = 5);

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  int label = 0;
  int rupee_value = 0;
  int angle = 0;
};

/// Writes <out_dir>/<class>/<sample>_<angle>.pgm for every image plus
/// <out_dir>/manifest.tsv (path, class index, rupee value, angle).
std::filesystem::path write_corpus(const std::vector<LabeledImage>& images,
                                   const std::filesystem::path& out_dir);

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);

/// Loads every manifest image and converts it to a feature vector.
std::vector<Sample> load_samples(const std::filesystem::path& manifest_path,
                                 const std::vector<ManifestEntry>& entries, bool normalize);

}  // namespace coin
