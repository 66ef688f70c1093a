#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sentinel/grid.hpp"

namespace sentinel {

/// 8-bit grayscale raster in image convention: row 0 is the top row.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int col, int row) const { return pixels[std::size_t(row) * width + col]; }
  std::uint8_t& at(int col, int row) { return pixels[std::size_t(row) * width + col]; }
};

/// Grid -> image: flips rows so the world-top row becomes image row 0.
GrayImage to_image(const BinaryGrid& grid);

/// Binary (P5) portable graymap I/O.
void write_pgm(const GrayImage& image, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

/// Writes <path> as a P5 graymap (occupied = pixel 0) plus a sidecar metadata
/// file next to it (same stem, .yaml extension) carrying resolution,
/// origin: [x, y, yaw], negate, occupied_thresh and free_thresh.
void save_map(const BinaryGrid& grid, const std::filesystem::path& pgm_path);

/// Loads a map from a metadata .yaml (its image key names the graymap) or
/// from a .pgm that has a sidecar .yaml next to it. Gray pixels are resolved
/// through occupied_thresh/negate, so third-party map-server maps load as-is.
BinaryGrid load_map(const std::filesystem::path& path);

}  // namespace sentinel
