#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flatreach/pipeline.hpp"

namespace flatreach {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Box {
  double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
  void add(Point p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  void pad(double m) { xmin -= m; ymin -= m; xmax += m; ymax += m; }
};

void path_for(std::ostringstream& os, const ClosedCurve& c,
              const std::string& stroke, double width) {
  os << "<path fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
     << num(width) << "\" d=\"M";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << " " << num(c.vertices[i].x) << " " << num(c.vertices[i].y);
    if (i == 0) os << " L";
  }
  os << " Z\"/>\n";
}

std::string document(const Box& box, const std::string& body) {
  const double w = box.xmax - box.xmin;
  const double h = box.ymax - box.ymin;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(box.xmin)
     << " " << num(-box.ymax) << " " << num(w) << " " << num(h) << "\">\n"
     << "<g transform=\"scale(1,-1)\">\n"
     << body << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace

std::string render_verify_svg(const VerifySvgContext& ctx) {
  Box box;
  for (const auto& c : ctx.input_boundary)
    for (const Point& p : c.vertices) box.add(p);
  for (const auto& c : ctx.minimizer_boundary)
    for (const Point& p : c.vertices) box.add(p);
  if (box.xmin > box.xmax) box = Box{0, 0, 1, 1};
  const double stroke = 0.004 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  box.pad(4.0 * stroke);

  std::ostringstream body;
  for (const auto& c : ctx.input_boundary) path_for(body, c, "#9e9e9e", stroke);
  for (const auto& c : ctx.minimizer_boundary) path_for(body, c, "#000000", stroke);
  if (ctx.reach_witness) {
    const auto& [a, b] = *ctx.reach_witness;
    body << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\""
         << num(b.x) << "\" y2=\"" << num(b.y)
         << "\" stroke=\"#d32f2f\" stroke-width=\"" << num(1.5 * stroke)
         << "\"/>\n";
  }
  return document(box, body.str());
}

std::string render_bound_svg(const ConstructionRegions& regions) {
  Box box;
  for (const TrackRegion* r : {&regions.r1, &regions.r2}) {
    box.add({r->xmin, r->ymin});
    box.add({r->xmax, r->ymax});
  }
  const double stroke = 0.004 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  box.pad(6.0 * stroke);

  std::ostringstream body;
  const char* colors[2] = {"#1565c0", "#1565c0"};
  const TrackRegion* tracks[2] = {&regions.r1, &regions.r2};
  for (int i = 0; i < 2; ++i) {
    const TrackRegion& r = *tracks[i];
    body << "<rect x=\"" << num(r.xmin) << "\" y=\"" << num(r.ymin)
         << "\" width=\"" << num(r.xmax - r.xmin) << "\" height=\""
         << num(r.ymax - r.ymin) << "\" fill=\"none\" stroke=\"" << colors[i]
         << "\" stroke-width=\"" << num(stroke) << "\"/>\n";
    for (const DiskSpec& d : r.removed)
      body << "<circle cx=\"" << num(d.center.x) << "\" cy=\"" << num(d.center.y)
           << "\" r=\"" << num(d.radius)
           << "\" fill=\"none\" stroke=\"" << colors[i]
           << "\" stroke-width=\"" << num(0.6 * stroke)
           << "\" stroke-dasharray=\"" << num(4 * stroke) << " "
           << num(4 * stroke) << "\"/>\n";
  }
  if (!regions.sstar.empty()) {
    body << "<path fill=\"#ff980055\" stroke=\"#e65100\" stroke-width=\""
         << num(0.8 * stroke) << "\" d=\"M";
    for (std::size_t i = 0; i < regions.sstar.size(); ++i) {
      body << " " << num(regions.sstar[i].x) << " " << num(regions.sstar[i].y);
      if (i == 0) body << " L";
    }
    body << " Z\"/>\n";
  }
  return document(box, body.str());
}

void emit_svg(const std::string& svg_text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(svg_text.data(), std::streamsize(svg_text.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace flatreach
