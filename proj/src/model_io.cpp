#include "coin/model_io.hpp"

#include "coin/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace coin {

namespace {

constexpr char kMagic[8] = {'C', 'O', 'I', 'N', 'M', 'L', 'P', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return take(1)[0]; }

  std::uint32_t u32() {
    const std::uint8_t* p = take(4);
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
  }

  double f64() {
    const std::uint8_t* p = take(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double value;
    std::memcpy(&value, &bits, sizeof value);
    return value;
  }

  const std::uint8_t* take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw ModelFileError("model file truncated");
    const std::uint8_t* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }

  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_model(const MlpModel& model) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + sizeof kMagic);
  put_u32(out, kFormatVersion);
  out.push_back(model.normalized_features ? 1 : 0);
  for (int k = 0; k < kClassCount; ++k) {
    out.push_back(static_cast<std::uint8_t>(rupee_value(denomination_of(k))));
  }
  put_u32(out, static_cast<std::uint32_t>(model.layer_sizes.size()));
  for (const int size : model.layer_sizes) put_u32(out, static_cast<std::uint32_t>(size));
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const Eigen::MatrixXd& w = model.weights[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) put_f64(out, w(i, j));
    }
    for (Eigen::Index i = 0; i < model.biases[l].size(); ++i) put_f64(out, model.biases[l](i));
  }
  return out;
}

MlpModel deserialize_model(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes);
  if (std::memcmp(in.take(sizeof kMagic), kMagic, sizeof kMagic) != 0) {
    throw ModelFileError("bad model magic, expected COINMLP1");
  }
  if (in.u32() != kFormatVersion) throw ModelFileError("unsupported model format version");

  MlpModel model;
  model.normalized_features = in.u8() != 0;
  for (int k = 0; k < kClassCount; ++k) {
    if (in.u8() != rupee_value(denomination_of(k))) {
      throw ModelFileError("model class-to-denomination table mismatch");
    }
  }
  const std::uint32_t layer_count = in.u32();
  if (layer_count < 3 || layer_count > 64) throw ModelFileError("implausible layer count");
  for (std::uint32_t i = 0; i < layer_count; ++i) {
    const std::uint32_t size = in.u32();
    if (size < 1 || size > 1u << 20) throw ModelFileError("implausible layer size");
    model.layer_sizes.push_back(static_cast<int>(size));
  }
  if (model.layer_sizes.back() != kClassCount) {
    throw ModelFileError("model output layer must have 14 units");
  }
  for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
    const int fan_in = model.layer_sizes[l];
    const int fan_out = model.layer_sizes[l + 1];
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i) {
      for (int j = 0; j < fan_in; ++j) w(i, j) = in.f64();
    }
    Eigen::VectorXd b(fan_out);
    for (int i = 0; i < fan_out; ++i) b(i) = in.f64();
    model.weights.push_back(std::move(w));
    model.biases.push_back(std::move(b));
  }
  if (!in.exhausted()) throw ModelFileError("trailing bytes after model payload");
  return model;
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw FileNotFound("no such model file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace coin
