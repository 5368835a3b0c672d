// Command-line front end for the coin recognition pipeline: synthetic corpus
// generation, preprocessing, training, classification, and evaluation.

#include "coin/classifier.hpp"
#include "coin/dataset.hpp"
#include "coin/errors.hpp"
#include "coin/evaluation.hpp"
#include "coin/features.hpp"
#include "coin/imaging.hpp"
#include "coin/model_io.hpp"
#include "coin/pgm.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace coin;

namespace {

constexpr double kTrainFrac = 0.90;
constexpr double kValFrac = 0.05;

struct GenerateArgs {
  std::string out_dir;
  std::uint64_t seed = 1;
  int step = 5;
  int side = 200;
  int samples_per_class = 5;
  int noise = 10;
  int offset = 4;
};

struct HoughArgs {
  int r_min = 0;  // 0 = auto from the image size
  int r_max = 0;
  double angular_step = 1.0;
  double sobel_threshold = -1.0;  // negative = auto
};

HoughParams resolve_hough(const HoughArgs& args, Index height, Index width) {
  HoughParams params = default_hough_params(height, width);
  if (args.r_min > 0) params.r_min = args.r_min;
  if (args.r_max > 0) params.r_max = args.r_max;
  params.angular_step = args.angular_step;
  return params;
}

std::optional<double> resolve_threshold(const HoughArgs& args) {
  if (args.sobel_threshold < 0.0) return std::nullopt;
  return args.sobel_threshold;
}

MlpModel load_model_or_die(const fs::path& path) {
  try {
    return load_model(path);
  } catch (const IoError& e) {
    throw ModelFileError(e.what());
  }
}

struct LoadedData {
  std::vector<ManifestEntry> entries;
  std::vector<Sample> samples;
};

LoadedData load_dataset(const fs::path& manifest_path, bool normalize) {
  try {
    LoadedData data;
    data.entries = read_manifest(manifest_path);
    data.samples = load_samples(manifest_path, data.entries, normalize);
    return data;
  } catch (const IoError& e) {
    throw ManifestError(e.what());
  } catch (const DimensionMismatch& e) {
    throw ManifestError(e.what());
  }
}

std::vector<Sample> pick(const std::vector<Sample>& samples, const std::vector<std::size_t>& idx) {
  std::vector<Sample> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(samples[i]);
  return out;
}

void print_split_row(const char* name, std::size_t count, double mse, double percent_error) {
  std::cout << std::left << std::setw(12) << name << std::right << std::setw(7) << count << "  "
            << std::setprecision(6) << mse << "  " << percent_error << "\n";
}

int cmd_generate(const GenerateArgs& args) {
  SyntheticCoinSpec spec;
  spec.side = args.side;
  spec.samples_per_class = args.samples_per_class;
  spec.noise_amplitude = args.noise;
  spec.center_offset = args.offset;
  spec.seed = args.seed;

  std::cout << "seed: " << spec.seed << "\n";
  const auto dataset = build_full_dataset(spec, args.step);
  const fs::path manifest = write_corpus(dataset, args.out_dir);

  std::int64_t per_denomination[4] = {};
  for (const auto& img : dataset) {
    switch (denomination_of(img.label)) {
      case Denomination::rupee1: ++per_denomination[0]; break;
      case Denomination::rupee2: ++per_denomination[1]; break;
      case Denomination::rupee5: ++per_denomination[2]; break;
      case Denomination::rupee10: ++per_denomination[3]; break;
    }
  }
  std::cout << "images: " << dataset.size() << " (₹1 " << per_denomination[0] << ", ₹2 "
            << per_denomination[1] << ", ₹5 " << per_denomination[2] << ", ₹10 "
            << per_denomination[3] << ")\n";
  std::cout << "manifest: " << manifest.string() << "\n";
  return 0;
}

int cmd_preprocess(const std::string& input, const std::string& output, const HoughArgs& hough,
                   bool dump_stages) {
  const RgbImage raw = load_image(input);
  const GrayImage gray = to_grayscale(raw);
  const HoughParams params = resolve_hough(hough, gray.rows(), gray.cols());

  std::optional<double> threshold = resolve_threshold(hough);
  if (!threshold) {
    const double max_mag = max_gradient_magnitude(gray);
    if (max_mag == 0.0) throw NoCircleFound("image has no gradients");
    threshold = 0.25 * max_mag;
  }

  const CircleHypothesis circle = detect_coin(gray, params, threshold);
  const GrayImage cropped = crop_to_circle(gray, circle);
  const GrayImage trimmed = resize(cropped, kCoinSide, kCoinSide);
  write_pgm(trimmed, output);
  std::cout << "circle: u=" << circle.u << " v=" << circle.v << " r=" << circle.r
            << " votes=" << circle.votes << "\n";
  std::cout << "wrote: " << output << "\n";

  if (dump_stages) {
    const fs::path out_path(output);
    const fs::path dir = out_path.parent_path();
    const std::string stem = out_path.stem().string();
    const auto stage = [&](const std::string& name) { return dir / (stem + "." + name + ".pgm"); };

    write_pgm(gray, stage("gray"));
    const EdgeMap edges = sobel_edges(gray, *threshold);
    GrayImage edge_img(edges.rows(), edges.cols());
    for (Index y = 0; y < edges.rows(); ++y) {
      for (Index x = 0; x < edges.cols(); ++x) edge_img(y, x) = edges(y, x) ? 255 : 0;
    }
    write_pgm(edge_img, stage("edges"));
    write_pgm(cropped, stage("cropped"));

    const PatternGrid grid = pattern_average(trimmed);
    GrayImage grid_img(kGridSide, kGridSide);
    for (Index a = 0; a < kGridSide; ++a) {
      for (Index b = 0; b < kGridSide; ++b) {
        grid_img(a, b) = static_cast<std::uint8_t>(std::lround(grid(a, b)));
      }
    }
    write_pgm(grid_img, stage("grid"));
    std::cout << "stages: " << stage("gray").string() << " " << stage("edges").string() << " "
              << stage("cropped").string() << " " << stage("grid").string() << "\n";
  }
  return 0;
}

int cmd_train(const std::string& manifest, const std::string& model_out,
              const std::vector<int>& hidden, const TrainConfig& config, bool no_normalize) {
  const bool normalize = !no_normalize;
  std::cout << "seed: " << config.seed << "\n";
  const LoadedData data = load_dataset(manifest, normalize);
  if (data.samples.empty()) throw EmptyDataset("manifest lists no samples");

  const SplitIndices idx = split_indices(data.samples.size(), kTrainFrac, kValFrac, config.seed);
  const std::vector<Sample> train_set = pick(data.samples, idx.train);
  const std::vector<Sample> val_set = pick(data.samples, idx.validation);
  const std::vector<Sample> test_set = pick(data.samples, idx.test);

  std::vector<int> layer_sizes;
  layer_sizes.push_back(kFeatureCount);
  layer_sizes.insert(layer_sizes.end(), hidden.begin(), hidden.end());
  layer_sizes.push_back(kClassCount);

  MlpModel model = init_model(layer_sizes, config.seed);
  model.normalized_features = normalize;
  auto [trained, report] = train(std::move(model), train_set, val_set, config);

  const auto [train_mse, train_pe] = mse_and_percent_error(trained, train_set);
  const auto [val_mse, val_pe] = mse_and_percent_error(trained, val_set);
  const auto [test_mse, test_pe] = mse_and_percent_error(trained, test_set);
  report.test_mse = test_mse;
  report.test_percent_error = test_pe;

  std::cout << std::left << std::setw(12) << "split" << std::right << std::setw(7) << "samples"
            << "  mse  %E\n";
  print_split_row("training", train_set.size(), train_mse, train_pe);
  print_split_row("validation", val_set.size(), val_mse, val_pe);
  print_split_row("testing", test_set.size(), test_mse, test_pe);
  std::cout << "epochs: " << report.epochs_run << " (best validation at " << report.best_epoch
            << ")\n";

  save_model(trained, model_out);
  std::cout << "model: " << model_out << "\n";
  return 0;
}

int cmd_classify(const std::string& model_path, const std::string& image_path,
                 const HoughArgs& hough) {
  const MlpModel model = load_model_or_die(model_path);
  const RgbImage raw = load_image(image_path);
  const GrayImage gray = to_grayscale(raw);
  const HoughParams params = resolve_hough(hough, gray.rows(), gray.cols());
  const GrayImage trimmed = trim_to_coin(gray, params, resolve_threshold(hough));
  const Eigen::VectorXd features = featurize(trimmed, model.normalized_features);
  const Classification result = classify(model, features);

  std::cout << "class: " << result.label << "\n";
  std::cout << "denomination: " << denomination_label(denomination_of(result.label)) << "\n";
  std::cout << "confidence: " << std::setprecision(6) << result.confidence << "\n";
  return 0;
}

int cmd_evaluate(const std::string& model_path, const std::string& manifest,
                 const std::string& scope, std::uint64_t seed, bool tsv) {
  const MlpModel model = load_model_or_die(model_path);
  const LoadedData data = load_dataset(manifest, model.normalized_features);
  if (data.samples.empty()) throw EmptyDataset("manifest lists no samples");

  std::vector<Sample> subset;
  if (scope == "all") {
    subset = data.samples;
  } else {
    const SplitIndices idx = split_indices(data.samples.size(), kTrainFrac, kValFrac, seed);
    subset = pick(data.samples, idx.test);
  }

  const ConfusionMatrix cm = confusion_matrix(model, subset);
  const auto [mse, percent_error] = mse_and_percent_error(model, subset);
  const Metrics metrics = recognition_rates(cm);

  if (tsv) {
    std::cout << "seed\t" << seed << "\nscope\t" << scope << "\nsamples\t" << subset.size()
              << "\nmse\t" << std::setprecision(6) << mse << "\npercent_error\t" << percent_error
              << "\nclass_accuracy\t" << 100.0 - percent_error << "\n";
    std::cout << format_recognition_report(metrics, true);
    std::cout << format_confusion_matrix(cm, true);
    return 0;
  }

  std::cout << "seed: " << seed << "\n";
  std::cout << "scope: " << scope << " (" << subset.size() << " samples)\n";
  std::cout << std::setprecision(6) << "mse: " << mse << "\n";
  std::cout << "class-level %E: " << percent_error << " (accuracy " << 100.0 - percent_error
            << "%)\n\n";
  std::cout << format_recognition_report(metrics, false) << "\n";
  std::cout << format_confusion_matrix(cm, false);
  return 0;
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const NoCircleFound*>(&e)) return 3;
  if (dynamic_cast<const ModelFileError*>(&e)) return 5;
  if (dynamic_cast<const IoError*>(&e)) return 2;
  return 4;  // dataset, manifest, shape, and other data-level failures
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coin recognition pipeline: Hough circle extraction, pattern-averaged "
               "features, and an MLP classifier over a synthetic 14-class corpus"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "render the synthetic corpus to disk");
  generate->add_option("--out", gen.out_dir, "output corpus directory")->required();
  generate->add_option("--seed", gen.seed, "corpus seed");
  generate->add_option("--step", gen.step, "rotation step in degrees (must divide 360)");
  generate->add_option("--side", gen.side, "base image side in pixels");
  generate->add_option("--samples", gen.samples_per_class, "base samples per class");
  generate->add_option("--noise", gen.noise, "intensity jitter amplitude");
  generate->add_option("--offset", gen.offset, "center offset range in pixels");

  std::string in_path, out_path;
  HoughArgs pre_hough;
  bool dump_stages = false;
  CLI::App* preprocess = app.add_subcommand("preprocess", "trim one coin image to 100x100");
  preprocess->add_option("input", in_path, "input PGM/PPM image")->required();
  preprocess->add_option("output", out_path, "output PGM path")->required();
  preprocess->add_option("--r-min", pre_hough.r_min, "minimum search radius (0 = auto)");
  preprocess->add_option("--r-max", pre_hough.r_max, "maximum search radius (0 = auto)");
  preprocess->add_option("--angular-step", pre_hough.angular_step, "vote ray spacing, degrees");
  preprocess->add_option("--sobel-threshold", pre_hough.sobel_threshold,
                         "edge threshold (negative = 0.25 * max gradient)");
  preprocess->add_flag("--dump-stages", dump_stages, "also write gray/edges/cropped/grid stages");

  std::string manifest_path, model_out;
  std::vector<int> hidden = {25};
  TrainConfig config;
  bool no_normalize = false;
  CLI::App* train_cmd = app.add_subcommand("train", "train the MLP on a corpus manifest");
  train_cmd->add_option("--manifest", manifest_path, "corpus manifest.tsv")->required();
  train_cmd->add_option("--model-out", model_out, "output model file")->required();
  train_cmd->add_option("--hidden", hidden, "hidden layer sizes")->delimiter(',');
  train_cmd->add_option("--learning-rate", config.learning_rate, "gradient step size");
  train_cmd->add_option("--batch", config.batch_size, "mini-batch size");
  train_cmd->add_option("--max-epochs", config.max_epochs, "epoch budget");
  train_cmd->add_option("--patience", config.patience, "epochs without validation improvement");
  train_cmd->add_option("--seed", config.seed, "shuffle/init/split seed");
  train_cmd->add_flag("--no-normalize", no_normalize, "feed raw 0..255 block averages");

  std::string cls_model, cls_image;
  HoughArgs cls_hough;
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify one coin image");
  classify_cmd->add_option("--model", cls_model, "trained model file")->required();
  classify_cmd->add_option("image", cls_image, "coin image (PGM/PPM)")->required();
  classify_cmd->add_option("--r-min", cls_hough.r_min, "minimum search radius (0 = auto)");
  classify_cmd->add_option("--r-max", cls_hough.r_max, "maximum search radius (0 = auto)");
  classify_cmd->add_option("--sobel-threshold", cls_hough.sobel_threshold,
                           "edge threshold (negative = auto)");

  std::string eval_model, eval_manifest, scope = "test";
  std::uint64_t eval_seed = 1;
  bool tsv = false;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score a model against a manifest");
  evaluate->add_option("--model", eval_model, "trained model file")->required();
  evaluate->add_option("--manifest", eval_manifest, "corpus manifest.tsv")->required();
  evaluate->add_option("--scope", scope, "test (held-out split) or all")
      ->check(CLI::IsMember({"test", "all"}));
  evaluate->add_option("--seed", eval_seed, "split seed used at training time");
  evaluate->add_flag("--tsv", tsv, "machine-readable tab-separated output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (preprocess->parsed()) return cmd_preprocess(in_path, out_path, pre_hough, dump_stages);
    if (train_cmd->parsed()) return cmd_train(manifest_path, model_out, hidden, config, no_normalize);
    if (classify_cmd->parsed()) return cmd_classify(cls_model, cls_image, cls_hough);
    if (evaluate->parsed()) return cmd_evaluate(eval_model, eval_manifest, scope, eval_seed, tsv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
