#include "sentinel/map_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

struct MapMetadata {
  std::string image;
  double resolution = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double origin_yaw = 0.0;
  int negate = 0;
  double occupied_thresh = 0.65;
  double free_thresh = 0.196;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const char* field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("metadata field '") + field + "' is not a number: " + text);
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

MapMetadata parse_metadata(const std::filesystem::path& yaml_path) {
  std::ifstream in(yaml_path);
  if (!in) throw ParseError("cannot open metadata file " + yaml_path.string());

  MapMetadata meta;
  bool saw_resolution = false, saw_origin = false;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (key == "image") {
      meta.image = value;
    } else if (key == "resolution") {
      meta.resolution = parse_double(value, "resolution");
      saw_resolution = true;
    } else if (key == "origin") {
      // origin: [x, y, yaw]
      std::string inner = value;
      if (inner.size() < 2 || inner.front() != '[' || inner.back() != ']') {
        throw ParseError("metadata field 'origin' must be [x, y, yaw], got: " + value);
      }
      inner = inner.substr(1, inner.size() - 2);
      std::stringstream parts(inner);
      std::string piece;
      double vals[3];
      int n = 0;
      while (std::getline(parts, piece, ',')) {
        if (n >= 3) throw ParseError("metadata field 'origin' has more than 3 components");
        vals[n++] = parse_double(trim(piece), "origin");
      }
      if (n != 3) throw ParseError("metadata field 'origin' needs 3 components");
      meta.origin_x = vals[0];
      meta.origin_y = vals[1];
      meta.origin_yaw = vals[2];
      saw_origin = true;
    } else if (key == "negate") {
      meta.negate = static_cast<int>(parse_double(value, "negate"));
    } else if (key == "occupied_thresh") {
      meta.occupied_thresh = parse_double(value, "occupied_thresh");
    } else if (key == "free_thresh") {
      meta.free_thresh = parse_double(value, "free_thresh");
    }
  }
  if (!saw_resolution) throw ParseError("metadata field 'resolution' is missing");
  if (!saw_origin) throw ParseError("metadata field 'origin' is missing");
  if (meta.resolution <= 0.0) throw ParseError("metadata field 'resolution' must be > 0");
  if (meta.origin_yaw != 0.0) {
    throw ParseError("metadata field 'origin' yaw must be 0; rotated maps are unsupported");
  }
  return meta;
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_pgm_token(std::istream& in) {
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

int parse_pgm_int(std::istream& in, const char* field) {
  const std::string tok = next_pgm_token(in);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError(std::string("graymap header field '") + field + "' is not an integer: " + tok);
  }
  return v;
}

}  // namespace

GrayImage to_image(const BinaryGrid& grid) {
  GrayImage img;
  img.width = grid.geom.width_cells;
  img.height = grid.geom.height_cells;
  img.pixels.resize(grid.geom.cell_count());
  for (int y = 0; y < img.height; ++y) {
    const int grid_row = img.height - 1 - y;
    for (int x = 0; x < img.width; ++x) {
      img.at(x, y) = grid.at({x, grid_row});
    }
  }
  return img;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write graymap " + path.string());
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error("short write to graymap " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graymap " + path.string());
  const std::string magic = next_pgm_token(in);
  if (magic != "P5") throw ParseError("graymap header field 'magic' must be P5, got: " + magic);
  GrayImage img;
  img.width = parse_pgm_int(in, "width");
  img.height = parse_pgm_int(in, "height");
  const int maxval = parse_pgm_int(in, "maxval");
  if (img.width <= 0 || img.height <= 0) {
    throw ParseError("graymap header field 'width/height' must be positive");
  }
  if (maxval <= 0 || maxval > 255) {
    throw ParseError("graymap header field 'maxval' must lie in [1, 255], got: " +
                     std::to_string(maxval));
  }
  // Header ends after exactly one whitespace byte (already consumed by the
  // token reader); the rest of the stream is the payload.
  const std::vector<std::uint8_t> payload{std::istreambuf_iterator<char>(in),
                                          std::istreambuf_iterator<char>()};
  const std::size_t expected = std::size_t(img.width) * std::size_t(img.height);
  if (payload.size() != expected) {
    throw IntegrityError("graymap payload of " + path.string() + " has " +
                         std::to_string(payload.size()) + " cells but header says " +
                         std::to_string(expected));
  }
  img.pixels = payload;
  if (maxval != 255) {
    for (auto& p : img.pixels) {
      p = static_cast<std::uint8_t>(p * 255 / maxval);
    }
  }
  return img;
}

void save_map(const BinaryGrid& grid, const std::filesystem::path& pgm_path) {
  write_pgm(to_image(grid), pgm_path);

  std::filesystem::path yaml_path = pgm_path;
  yaml_path.replace_extension(".yaml");
  std::ofstream out(yaml_path);
  if (!out) throw Error("cannot write metadata " + yaml_path.string());
  out << "image: " << pgm_path.filename().string() << "\n"
      << "resolution: " << format_double(grid.geom.resolution) << "\n"
      << "origin: [" << format_double(grid.geom.origin_world.x) << ", "
      << format_double(grid.geom.origin_world.y) << ", 0]\n"
      << "negate: 0\n"
      << "occupied_thresh: 0.65\n"
      << "free_thresh: 0.196\n";
}

BinaryGrid load_map(const std::filesystem::path& path) {
  std::filesystem::path yaml_path = path;
  if (path.extension() != ".yaml") yaml_path.replace_extension(".yaml");
  const MapMetadata meta = parse_metadata(yaml_path);

  std::filesystem::path image_path;
  if (path.extension() != ".yaml") {
    image_path = path;
  } else if (!meta.image.empty()) {
    image_path = yaml_path.parent_path() / meta.image;
  } else {
    throw ParseError("metadata field 'image' is missing");
  }
  const GrayImage img = read_pgm(image_path);

  BinaryGrid grid;
  grid.geom.width_cells = img.width;
  grid.geom.height_cells = img.height;
  grid.geom.resolution = meta.resolution;
  grid.geom.origin_world = {meta.origin_x, meta.origin_y};
  grid.cells.resize(grid.geom.cell_count());
  for (int y = 0; y < img.height; ++y) {
    const int grid_row = img.height - 1 - y;
    for (int x = 0; x < img.width; ++x) {
      const double shade = img.at(x, y) / 255.0;
      const double occupancy = meta.negate ? shade : 1.0 - shade;
      grid.at({x, grid_row}) =
          occupancy > meta.occupied_thresh ? BinaryGrid::kOccupied : BinaryGrid::kFree;
    }
  }
  return grid;
}

}  // namespace sentinel
