#pragma once

#include <filesystem>

#include "sentinel/map_io.hpp"

namespace sentinel {

/// Composes the A/B/C/D grid dumps of a detection run into one panel image
/// per robot per frame, and draws each frame's fused boxes onto the prior
/// map as a global overlay. run_dir must hold prior.pgm/.yaml and
/// detections.csv from the run; frames_dir holds the dumps. Returns the
/// number of images written.
int render_run(const std::filesystem::path& run_dir,
               const std::filesystem::path& frames_dir,
               const std::filesystem::path& out_dir);

/// Draws a one-pixel rectangle outline (shade) for a grid-coordinate box on
/// a map image (row 0 = top row of the map).
void draw_box_outline(GrayImage& image, const BBox& box, std::uint8_t shade);

}  // namespace sentinel
