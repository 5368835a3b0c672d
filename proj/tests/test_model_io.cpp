#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coin/errors.hpp"
#include "coin/model_io.hpp"
#include "test_util.hpp"

#include <filesystem>
#include <fstream>

using namespace coin;
namespace fs = std::filesystem;

TEST_CASE("serialize/deserialize preserves every parameter bit") {
  MlpModel model = init_model({400, 25, 14}, 123);
  model.normalized_features = false;
  const MlpModel back = deserialize_model(serialize_model(model));
  CHECK(back.layer_sizes == model.layer_sizes);
  CHECK(back.normalized_features == false);
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    CHECK(back.weights[l] == model.weights[l]);
    CHECK(back.biases[l] == model.biases[l]);
  }
}

TEST_CASE("save/load round trip classifies identically") {
  const fs::path path = fs::temp_directory_path() / "coin_test_model.bin";
  const MlpModel model = init_model({400, 25, 14}, 7);
  save_model(model, path);
  const MlpModel loaded = load_model(path);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Eigen::VectorXd x = testutil::random_features(400, seed);
    const Classification a = classify(model, x);
    const Classification b = classify(loaded, x);
    CHECK(a.label == b.label);
    CHECK(a.confidence == b.confidence);
  }
  fs::remove(path);
}

TEST_CASE("model files with a wrong magic are rejected") {
  const fs::path path = fs::temp_directory_path() / "coin_test_badmagic.bin";
  auto bytes = serialize_model(init_model({400, 25, 14}, 1));
  bytes[0] = 'X';
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.close();
  CHECK_THROWS_AS(load_model(path), ModelFileError);
  fs::remove(path);
}

TEST_CASE("truncated and padded payloads are rejected") {
  auto bytes = serialize_model(init_model({400, 25, 14}, 1));
  auto truncated = bytes;
  truncated.resize(truncated.size() - 9);
  CHECK_THROWS_AS(deserialize_model(truncated), ModelFileError);
  auto padded = bytes;
  padded.push_back(0);
  CHECK_THROWS_AS(deserialize_model(padded), ModelFileError);
}

TEST_CASE("missing model file reports FileNotFound") {
  CHECK_THROWS_AS(load_model(fs::temp_directory_path() / "coin_test_absent.bin"), FileNotFound);
}

TEST_CASE("the serialized header is stable") {
  const auto bytes = serialize_model(init_model({400, 25, 14}, 1));
  const std::string magic(bytes.begin(), bytes.begin() + 8);
  CHECK(magic == "COINMLP1");
  // version 1, little endian
  CHECK(bytes[8] == 1);
  CHECK(bytes[11] == 0);
  // normalization flag defaults to on
  CHECK(bytes[12] == 1);
  // class->rupee table
  CHECK(bytes[13] == 1);
  CHECK(bytes[13 + 4] == 2);
  CHECK(bytes[13 + 8] == 5);
  CHECK(bytes[13 + 12] == 10);
}
