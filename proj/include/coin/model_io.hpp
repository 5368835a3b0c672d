#pragma once

#include "coin/classifier.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace coin {

/// COINMLP1 container: magic, format version, normalization flag, the
/// class-to-rupee table, layer sizes, then per-layer row-major weights and
/// biases as little-endian IEEE 754 doubles. Loading reproduces the exact
/// parameter bits, so classifications round-trip unchanged.
std::vector<std::uint8_t> serialize_model(const MlpModel& model);
MlpModel deserialize_model(const std::vector<std::uint8_t>& bytes);

void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace coin
