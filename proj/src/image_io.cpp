#include "aclbf/image_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace aclbf {

namespace {

// Reads the next ASCII token of a PNM header, skipping whitespace and
// '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

int parse_dim(const std::string& tok, const std::string& path) {
  try {
    std::size_t pos = 0;
    int val = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return val;
  } catch (const std::exception&) {
    throw std::runtime_error("malformed PGM header in " + path);
  }
}

}  // namespace

GrayImage load_gray(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open image file: " + path);

  const std::string magic = next_token(in);
  if (magic == "P6" || magic == "P3")
    throw std::runtime_error("color image rejected (grayscale PGM expected): " + path);
  if (magic != "P5")
    throw std::runtime_error("unsupported image format (binary PGM/P5 expected): " + path);

  const int width = parse_dim(next_token(in), path);
  const int height = parse_dim(next_token(in), path);
  const int maxval = parse_dim(next_token(in), path);
  if (width < 3 || height < 3)
    throw std::runtime_error("degenerate image dimensions (need at least 3x3): " + path);
  if (maxval < 1 || maxval > 255)
    throw std::runtime_error("unsupported bit depth (8-bit PGM expected): " + path);

  std::vector<std::uint8_t> raw(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw std::runtime_error("truncated PGM pixel data: " + path);

  // File order is row-major top-to-bottom; storage is column-major.
  GrayImage img(height, width);
  for (int i = 0; i < height; ++i)
    for (int j = 0; j < width; ++j)
      img(i, j) = raw[static_cast<std::size_t>(i) * width + j] / 255.0;
  return img;
}

void write_gray(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "P5\n" << img.m2 << " " << img.m1 << "\n255\n";
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(img.m1) * img.m2);
  for (int i = 0; i < img.m1; ++i)
    for (int j = 0; j < img.m2; ++j) {
      double q = std::lround(img(i, j) * 255.0);
      if (q < 0) q = 0;
      if (q > 255) q = 255;
      raw[static_cast<std::size_t>(i) * img.m2 + j] = static_cast<std::uint8_t>(q);
    }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_mask(const LabelMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "P5\n" << mask.m2 << " " << mask.m1 << "\n255\n";
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(mask.m1) * mask.m2);
  for (int i = 0; i < mask.m1; ++i)
    for (int j = 0; j < mask.m2; ++j)
      raw[static_cast<std::size_t>(i) * mask.m2 + j] = mask(i, j) ? 255 : 0;
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

LabelMask threshold_mask(const GrayImage& img) {
  LabelMask mask(img.m1, img.m2);
  for (int k = 0; k < img.size(); ++k) mask.v[k] = img.v[k] > 0.5 ? 1 : 0;
  return mask;
}

void overlay_contour(const GrayImage& img, const LabelMask& mask, const std::string& path) {
  if (img.m1 != mask.m1 || img.m2 != mask.m2)
    throw std::invalid_argument("overlay_contour: image/mask dimension mismatch");

  auto on_contour = [&](int i, int j) {
    const std::uint8_t c = mask(i, j);
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      int ni = i + di[k], nj = j + dj[k];
      if (ni >= 0 && ni < mask.m1 && nj >= 0 && nj < mask.m2 && mask(ni, nj) != c) return true;
    }
    return false;
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "P6\n" << img.m2 << " " << img.m1 << "\n255\n";
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(img.m1) * img.m2 * 3);
  for (int i = 0; i < img.m1; ++i)
    for (int j = 0; j < img.m2; ++j) {
      std::size_t off = 3 * (static_cast<std::size_t>(i) * img.m2 + j);
      if (on_contour(i, j)) {
        raw[off] = 255;
        raw[off + 1] = 0;
        raw[off + 2] = 0;
      } else {
        double q = std::lround(img(i, j) * 255.0);
        if (q < 0) q = 0;
        if (q > 255) q = 255;
        raw[off] = raw[off + 1] = raw[off + 2] = static_cast<std::uint8_t>(q);
      }
    }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace aclbf
