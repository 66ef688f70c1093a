#include "sentinel/render.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sentinel/errors.hpp"
#include "sentinel/geometry.hpp"

namespace sentinel {

namespace {

constexpr std::uint8_t kSeparator = 128;
constexpr std::uint8_t kBoxShade = 128;

struct DumpKey {
  int robot = 0;
  long frame = 0;
  auto operator<=>(const DumpKey&) const = default;
};

// r<id>_f<frame>_<A|B|C|D>.pgm
bool parse_dump_name(const std::string& name, DumpKey& key, char& panel) {
  if (name.size() < 10 || name[0] != 'r' || !name.ends_with(".pgm")) return false;
  const std::size_t f_pos = name.find("_f");
  const std::size_t p_pos = name.rfind('_');
  if (f_pos == std::string::npos || p_pos == std::string::npos || p_pos <= f_pos + 1) {
    return false;
  }
  try {
    key.robot = std::stoi(name.substr(1, f_pos - 1));
    key.frame = std::stol(name.substr(f_pos + 2, p_pos - f_pos - 2));
  } catch (const std::exception&) {
    return false;
  }
  panel = name[p_pos + 1];
  return panel >= 'A' && panel <= 'D';
}

GrayImage hstack(const std::vector<GrayImage>& panels) {
  int width = static_cast<int>(panels.size()) - 1;  // separator columns
  const int height = panels.front().height;
  for (const GrayImage& p : panels) {
    if (p.height != height) throw Error("render: panel heights differ within a frame");
    width += p.width;
  }
  GrayImage out;
  out.width = width;
  out.height = height;
  out.pixels.assign(std::size_t(width) * height, kSeparator);
  int x_off = 0;
  for (const GrayImage& p : panels) {
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < p.width; ++x) {
        out.at(x_off + x, y) = p.at(x, y);
      }
    }
    x_off += p.width + 1;
  }
  return out;
}

}  // namespace

void draw_box_outline(GrayImage& image, const BBox& box, std::uint8_t shade) {
  // Grid row y maps to image row height-1-y.
  const int x1 = std::max(0, box.x1);
  const int x2 = std::min(image.width, box.x2);
  const int row_top = std::max(0, image.height - box.y2);
  const int row_bottom = std::min(image.height, image.height - box.y1);
  if (x1 >= x2 || row_top >= row_bottom) return;
  for (int x = x1; x < x2; ++x) {
    image.at(x, row_top) = shade;
    image.at(x, row_bottom - 1) = shade;
  }
  for (int y = row_top; y < row_bottom; ++y) {
    image.at(x1, y) = shade;
    image.at(x2 - 1, y) = shade;
  }
}

int render_run(const std::filesystem::path& run_dir,
               const std::filesystem::path& frames_dir,
               const std::filesystem::path& out_dir) {
  if (!std::filesystem::is_directory(frames_dir)) {
    throw Error("render: frame dump directory " + frames_dir.string() + " does not exist");
  }

  std::map<DumpKey, std::map<char, std::filesystem::path>> dumps;
  for (const auto& entry : std::filesystem::directory_iterator(frames_dir)) {
    DumpKey key;
    char panel = 0;
    if (entry.is_regular_file() && parse_dump_name(entry.path().filename().string(), key, panel)) {
      dumps[key][panel] = entry.path();
    }
  }
  if (dumps.empty()) {
    throw Error("render: no frame dumps found under " + frames_dir.string());
  }

  // frame -> fused boxes of that frame
  std::map<long, std::vector<BBox>> fused;
  std::ifstream det(run_dir / "detections.csv");
  if (!det) throw Error("render: missing detections.csv under " + run_dir.string());
  std::string line;
  std::getline(det, line);  // header
  while (std::getline(det, line)) {
    std::stringstream row(line);
    std::string field;
    long values[5];
    bool ok = true;
    for (int i = 0; i < 5 && ok; ++i) {
      ok = static_cast<bool>(std::getline(row, field, ','));
      if (ok) values[i] = std::stol(field);
    }
    if (!ok) continue;
    fused[values[0]].push_back(BBox{static_cast<int>(values[1]), static_cast<int>(values[2]),
                                    static_cast<int>(values[3]), static_cast<int>(values[4])});
  }

  const GrayImage prior = read_pgm(run_dir / "prior.pgm");
  std::filesystem::create_directories(out_dir);

  int written = 0;
  std::vector<long> frames_rendered;
  for (const auto& [key, panels] : dumps) {
    if (panels.size() != 4) continue;  // incomplete quadruple
    std::vector<GrayImage> images;
    for (char p = 'A'; p <= 'D'; ++p) images.push_back(read_pgm(panels.at(p)));
    const GrayImage panel = hstack(images);
    const std::string name =
        "r" + std::to_string(key.robot) + "_f" + std::to_string(key.frame) + "_panel.pgm";
    write_pgm(panel, out_dir / name);
    ++written;

    if (std::find(frames_rendered.begin(), frames_rendered.end(), key.frame) ==
        frames_rendered.end()) {
      frames_rendered.push_back(key.frame);
      GrayImage global = prior;
      const auto it = fused.find(key.frame);
      if (it != fused.end()) {
        for (const BBox& box : it->second) draw_box_outline(global, box, kBoxShade);
      }
      write_pgm(global, out_dir / ("f" + std::to_string(key.frame) + "_global.pgm"));
      ++written;
    }
  }
  return written;
}

}  // namespace sentinel
