#include "winspect/raster.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace winspect {

size_t BinaryMask::popcount() const {
  size_t n = 0;
  for (uint8_t b : bits) n += (b != 0);
  return n;
}

void write_pgm(const Raster& raster, std::ostream& os) {
  os << "P5\n" << raster.width << " " << raster.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(raster.data.data()),
           static_cast<std::streamsize>(raster.data.size()));
}

namespace {

// Skips whitespace and '#' comments between PNM header tokens.
int next_pnm_int(std::istream& is) {
  int c = is.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = is.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = is.get();
  }
  if (c == EOF) throw std::runtime_error("pgm: truncated header");
  int value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    any = true;
    c = is.get();
  }
  if (!any) throw std::runtime_error("pgm: malformed header");
  return value;
}

}  // namespace

Raster read_pgm(std::istream& is) {
  char m0 = static_cast<char>(is.get());
  char m1 = static_cast<char>(is.get());
  if (m0 != 'P' || m1 != '5') throw std::runtime_error("pgm: not a binary P5 file");
  int w = next_pnm_int(is);
  int h = next_pnm_int(is);
  int maxval = next_pnm_int(is);
  if (w <= 0 || h <= 0 || maxval != 255) throw std::runtime_error("pgm: unsupported dimensions or maxval");
  Raster r(w, h);
  is.read(reinterpret_cast<char*>(r.data.data()), static_cast<std::streamsize>(r.data.size()));
  if (is.gcount() != static_cast<std::streamsize>(r.data.size()))
    throw std::runtime_error("pgm: truncated pixel data");
  return r;
}

void write_pgm_file(const Raster& raster, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_pgm(raster, os);
}

Raster read_pgm_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_pgm(is);
}

void write_pbm(const BinaryMask& mask, std::ostream& os) {
  os << "P4\n" << mask.width << " " << mask.height << "\n";
  int row_bytes = (mask.width + 7) / 8;
  std::vector<uint8_t> row(row_bytes);
  for (int y = 0; y < mask.height; ++y) {
    std::fill(row.begin(), row.end(), 0);
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) row[x >> 3] |= static_cast<uint8_t>(0x80u >> (x & 7));
    os.write(reinterpret_cast<const char*>(row.data()), row_bytes);
  }
}

void write_pbm_file(const BinaryMask& mask, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_pbm(mask, os);
}

}  // namespace winspect
