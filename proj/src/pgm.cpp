#include "coin/pgm.hpp"

#include "coin/errors.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace coin {

namespace {

// Reads the next header token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {}
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

long parse_dim(const std::string& token, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw CorruptImage(std::string("pnm: malformed ") + what);
  }
  const long value = std::stol(token);
  if (value < 1) throw CorruptImage(std::string("pnm: nonpositive ") + what);
  return value;
}

std::vector<std::uint8_t> read_raster(std::istream& in, std::size_t bytes,
                                      const std::filesystem::path& path) {
  std::vector<std::uint8_t> data(bytes);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    throw CorruptImage("pnm: truncated raster in " + path.string());
  }
  return data;
}

struct PnmHeader {
  std::string magic;
  long width = 0, height = 0, maxval = 0;
};

PnmHeader read_header(std::istream& in, const std::filesystem::path& path) {
  PnmHeader h;
  h.magic = next_token(in);
  if (h.magic != "P5" && h.magic != "P6") {
    throw UnsupportedFormat("pnm: expected binary P5/P6 magic in " + path.string());
  }
  h.width = parse_dim(next_token(in), "width");
  h.height = parse_dim(next_token(in), "height");
  h.maxval = parse_dim(next_token(in), "maxval");
  if (h.maxval > 255) {
    throw UnsupportedFormat("pnm: only 8-bit maxval supported in " + path.string());
  }
  return h;
}

std::ifstream open_input(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw FileNotFound("no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const PnmHeader h = read_header(in, path);
  RgbImage img;
  img.r.resize(h.height, h.width);
  img.g.resize(h.height, h.width);
  img.b.resize(h.height, h.width);
  const std::size_t pixels = static_cast<std::size_t>(h.width) * h.height;
  if (h.magic == "P5") {
    const auto data = read_raster(in, pixels, path);
    for (std::size_t i = 0; i < pixels; ++i) {
      img.r.data()[i] = img.g.data()[i] = img.b.data()[i] = data[i];
    }
  } else {
    const auto data = read_raster(in, pixels * 3, path);
    for (std::size_t i = 0; i < pixels; ++i) {
      img.r.data()[i] = data[3 * i];
      img.g.data()[i] = data[3 * i + 1];
      img.b.data()[i] = data[3 * i + 2];
    }
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  const PnmHeader h = read_header(in, path);
  if (h.magic != "P5") {
    throw UnsupportedFormat("read_pgm: expected P5 in " + path.string());
  }
  GrayImage img(h.height, h.width);
  const auto data = read_raster(in, static_cast<std::size_t>(h.width) * h.height, path);
  std::copy(data.begin(), data.end(), img.data());
  return img;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace coin
