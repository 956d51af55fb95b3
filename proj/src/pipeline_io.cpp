#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flatreach/pipeline.hpp"

namespace flatreach {

namespace {

// Minimal PGM tokenizer tracking line/byte position for error messages.
class PgmReader {
 public:
  PgmReader(std::string data, std::string path)
      : data_(std::move(data)), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << path_ << ": " << what << " (line " << line_ << ", byte " << pos_ << ")";
    throw ParseError(os.str());
  }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_int() {
    skip_space_and_comments();
    if (pos_ >= data_.size()) fail("unexpected end of file while reading number");
    if (!std::isdigit(static_cast<unsigned char>(data_[pos_])))
      fail("expected an unsigned integer");
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      v = v * 10 + (data_[pos_] - '0');
      if (v > 1000000000L) fail("number out of range");
      ++pos_;
    }
    return int(v);
  }

  std::string magic() {
    if (data_.size() < 2) fail("file too short for a PGM header");
    const std::string m = data_.substr(0, 2);
    pos_ = 2;
    return m;
  }

  void expect_single_space() {
    if (pos_ >= data_.size() ||
        !std::isspace(static_cast<unsigned char>(data_[pos_])))
      fail("expected whitespace before raster data");
    if (data_[pos_] == '\n') ++line_;
    ++pos_;
  }

  const std::string& data() const { return data_; }
  std::size_t pos() const { return pos_; }

 private:
  std::string data_;
  std::string path_;
  std::size_t pos_ = 0;
  long line_ = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(data.data(), std::streamsize(data.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

// Shortest representation that parses back to the same double, preferring
// plain %.12g and escalating to %.17g when needed.
std::string format_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GridMask load_mask_pgm(const std::string& path) {
  PgmReader r(read_file(path), path);
  const std::string magic = r.magic();
  if (magic != "P2" && magic != "P5") r.fail("unsupported magic '" + magic + "'");
  const int width = r.read_int();
  const int height = r.read_int();
  const int maxval = r.read_int();
  if (width <= 0 || height <= 0) r.fail("non-positive image dimensions");
  if (maxval <= 0 || maxval > 255) r.fail("maxval must be in [1, 255]");

  GridMask mask(width, height, 1.0);
  if (magic == "P2") {
    for (int row = 0; row < height; ++row)
      for (int x = 0; x < width; ++x) {
        const int v = r.read_int();
        if (v > maxval) r.fail("sample exceeds maxval");
        mask.set(x, height - 1 - row, v >= 128);
      }
  } else {
    r.expect_single_space();
    const std::size_t need = std::size_t(width) * height;
    if (r.data().size() - r.pos() < need) r.fail("raster data truncated");
    const char* raw = r.data().data() + r.pos();
    for (int row = 0; row < height; ++row)
      for (int x = 0; x < width; ++x) {
        const unsigned char v = raw[std::size_t(row) * width + x];
        mask.set(x, height - 1 - row, v >= 128);
      }
  }
  return mask;
}

void save_mask_pgm(const GridMask& mask, const std::string& path, bool binary) {
  std::ostringstream os;
  os << (binary ? "P5" : "P2") << "\n"
     << mask.width << " " << mask.height << "\n255\n";
  if (binary) {
    std::string raster(std::size_t(mask.width) * mask.height, '\0');
    for (int row = 0; row < mask.height; ++row)
      for (int x = 0; x < mask.width; ++x)
        raster[std::size_t(row) * mask.width + x] =
            mask.at(x, mask.height - 1 - row) ? char(255) : char(0);
    os << raster;
  } else {
    for (int row = 0; row < mask.height; ++row) {
      for (int x = 0; x < mask.width; ++x) {
        os << (mask.at(x, mask.height - 1 - row) ? "255" : "0");
        os << (x + 1 == mask.width ? "\n" : " ");
      }
    }
  }
  write_file(path, os.str());
}

ClosedCurve load_polygon_json(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices"))
    throw ParseError(path + ": polygon JSON needs a 'vertices' array");
  if (!doc.value("closed", false))
    throw ParseError(path + ": polygon must have \"closed\": true");
  const auto& verts = doc["vertices"];
  if (!verts.is_array() || verts.size() < 3)
    throw ParseError(path + ": polygon needs at least 3 vertices");

  std::vector<Point> pts;
  pts.reserve(verts.size());
  for (const auto& v : verts) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError(path + ": each vertex must be [x, y]");
    pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  try {
    return make_closed_curve(std::move(pts));
  } catch (const std::domain_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_polygon_json(const ClosedCurve& curve, const std::string& path) {
  std::ostringstream os;
  os << "{\"vertices\": [";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i) os << ", ";
    os << "[" << format_exact(curve.vertices[i].x) << ", "
       << format_exact(curve.vertices[i].y) << "]";
  }
  os << "], \"closed\": true}\n";
  write_file(path, os.str());
}

GridMask rasterize_polygon(const ClosedCurve& curve, double spacing, int margin) {
  if (!(spacing > 0.0)) throw std::domain_error("raster spacing must be positive");
  double xmin = curve.vertices[0].x, xmax = xmin;
  double ymin = curve.vertices[0].y, ymax = ymin;
  for (const Point& p : curve.vertices) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int wpix = std::max(1, int(std::ceil((xmax - xmin) / spacing)));
  const int hpix = std::max(1, int(std::ceil((ymax - ymin) / spacing)));
  GridMask mask(wpix + 2 * margin, hpix + 2 * margin, spacing);

  const std::size_t n = curve.size();
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const Point c{xmin + (x - margin + 0.5) * spacing,
                    ymin + (y - margin + 0.5) * spacing};
      int crossings = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = curve.vertices[i];
        const Point b = curve.at(i + 1);
        if ((a.y <= c.y) != (b.y <= c.y)) {
          const double t = (c.y - a.y) / (b.y - a.y);
          if (a.x + t * (b.x - a.x) > c.x) ++crossings;
        }
      }
      mask.set(x, y, crossings % 2 == 1);
    }
  }
  return mask;
}

LoadedShape load_shape(const std::string& path, InputKind kind) {
  LoadedShape out;
  if (kind == InputKind::MaskPgm)
    out.mask = load_mask_pgm(path);
  else
    out.curve = load_polygon_json(path);
  return out;
}

GridMask mask_from_config(const PipelineConfig& config, const LoadedShape& shape) {
  if (shape.mask) return padded(*shape.mask, 2);
  if (!shape.curve) throw std::logic_error("load_shape produced no shape");
  double spacing = config.raster_spacing;
  if (!(spacing > 0.0)) spacing = curve_diameter(*shape.curve) / 256.0;
  return rasterize_polygon(*shape.curve, spacing, 2);
}

}  // namespace flatreach
