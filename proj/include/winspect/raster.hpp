#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace winspect {

// Label values used by the synthetic renderer and the geometric segmenter.
// Blade k carries label kLabelBladeBase + k.
constexpr uint8_t kLabelBackground = 0;
constexpr uint8_t kLabelTower = 1;
constexpr uint8_t kLabelNacelle = 2;
constexpr uint8_t kLabelBladeBase = 3;

/// Row-major 8-bit label image. Pixel frame: x right, y down.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  Raster() = default;
  Raster(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0) {}

  uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

/// One bit per pixel, stored as bytes (0/1). Dimensions match the source raster.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<size_t>(w) * h, 0) {}

  uint8_t& at(int x, int y) { return bits[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x]; }
  size_t popcount() const;
};

// Binary portable graymap / bitmap, for golden files and mask dumps.
void write_pgm(const Raster& raster, std::ostream& os);
Raster read_pgm(std::istream& is);
void write_pgm_file(const Raster& raster, const std::string& path);
Raster read_pgm_file(const std::string& path);
void write_pbm(const BinaryMask& mask, std::ostream& os);
void write_pbm_file(const BinaryMask& mask, const std::string& path);

}  // namespace winspect
